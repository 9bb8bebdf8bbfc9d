//! Graph-directed iterated function systems on compact subsets of R^d (d ≤ 3):
//! certified outer approximations of the invariant sets, symbolic coding of
//! points by edge paths, total-disconnectedness classification, and
//! certificate-based isomorphism checks for the associated bimodules of
//! functions on the attractor.
//!
//! The library is organized bottom-up:
//!
//! * [`graph`] — finite directed multigraphs and path combinatorics;
//! * [`geometry`] — axis-aligned boxes, tagged grid coverings, point clouds,
//!   and the distance computations everything else leans on;
//! * [`mw`] — two-sided contraction data attached to graph edges
//!   (Mauldin–Williams systems) and their validation;
//! * [`attractor`] — the Hutchinson box iteration and a chaos-game sampler;
//! * [`symbolic`] — cylinder sets, the coding map, and address recovery;
//! * [`structure`] — disconnectedness verdicts and aperiodicity witnesses;
//! * [`correspondence`] — the bimodule of edge-indexed functions, conjugacy
//!   certificates, and the isomorphism decision procedure;
//! * [`config`], [`report`], [`render`], [`cli`] — the file formats and the
//!   thin `mwkit` command-line front end.
//!
//! The runnable `examples/` directory is the best starting point; each example
//! exercises one capability end to end on the bundled system configurations.

pub mod attractor;
pub mod cli;
pub mod config;
pub mod correspondence;
pub mod geometry;
pub mod graph;
pub mod mw;
pub mod render;
pub mod report;
pub mod structure;
pub mod symbolic;
