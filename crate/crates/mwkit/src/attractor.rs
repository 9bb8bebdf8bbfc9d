//! Certified outer approximation of the invariant set family.
//!
//! The system's invariant list is the unique family of nonempty compact sets
//! `K_v = ⋃_{e: s(e)=v} φ_e(K_{r(e)})`. Iterating that union operator on the
//! ambient boxes produces a monotone decreasing sequence of outer coverings;
//! contraction gives the a-priori bound `d_H(S_n, K) ≤ c^n·D`, so the solver
//! runs until `c^n·D ≤ h` *and* the per-vertex Hausdorff change between
//! iterates is ≤ h, and reports a rigorous error bound.
//!
//! The chaos-game sampler is a cheap cross-check, never the authority: its
//! points must land within the solver's error bound of the covering, and the
//! acceptance of a covering never depends on sampled points.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::geometry::{hausdorff_distance, GeometryError, TaggedBoxSet, TaggedPointCloud};
use crate::graph::VertexId;
use crate::mw::{apply_edge, apply_edge_point, global_ratio, MWGraph, MwError};

#[derive(Debug, Clone, Error)]
pub enum AttractorError {
    /// The iteration budget ran out before the stopping rule fired; the
    /// partial solution is attached so callers can inspect how far it got.
    #[error("no convergence within {max_iterations} iterations (change still {last_change:.3e})")]
    MaxIterationsExceeded {
        max_iterations: usize,
        last_change: f64,
        partial: Box<InvariantList>,
    },
    /// The random walk failed to visit some vertex within its step budget.
    #[error("chaos game stalled before filling every vertex bucket")]
    Stalled,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Mw(#[from] MwError),
}

/// Outer approximation of the invariant list at a fixed resolution, with the
/// convergence data that certifies it.
#[derive(Debug, Clone)]
pub struct InvariantList {
    /// Covering per vertex, aligned with the graph's vertex list.
    sets: Vec<TaggedBoxSet>,
    /// Hutchinson iterations actually performed.
    pub iterations: usize,
    /// `max_v d_H(step(K)_v, K_v)`: how far the result is from being fixed.
    pub residual: f64,
    /// Rigorous bound on `d_H(covering, true set)`:
    /// `c^n·D/(1−c) + 2·(cell diameter)`.
    pub error_bound: f64,
}

impl InvariantList {
    pub fn sets(&self) -> &[TaggedBoxSet] {
        &self.sets
    }

    pub fn set_for(&self, v: VertexId) -> Option<&TaggedBoxSet> {
        self.sets.iter().find(|s| s.vertex() == v)
    }

    pub fn resolution(&self) -> f64 {
        self.sets[0].resolution()
    }
}

/// One application of the union operator
/// `S_v ↦ ⋃_{e: s(e)=v} φ_e(S_{r(e)})`, every image an outer covering on the
/// target vertex's grid at the input resolution.
pub fn hutchinson_step(mw: &MWGraph, sets: &[TaggedBoxSet]) -> Vec<TaggedBoxSet> {
    let g = mw.graph();
    let set_of = |v: VertexId| -> &TaggedBoxSet {
        &sets[g.vertex_index(v).expect("sets aligned with vertices")]
    };
    g.vertices()
        .iter()
        .map(|&v| {
            let mut acc =
                TaggedBoxSet::empty(v, mw.ambient_of(v).clone(), sets[0].resolution()).unwrap();
            for &e in g.outgoing(v) {
                let image = apply_edge(mw, e, set_of(g.range(e))).expect("tags line up");
                for c in image.cells() {
                    acc.insert_cell(*c);
                }
            }
            acc
        })
        .collect()
}

/// Iterates the union operator from the full ambient coverings down to the
/// invariant list at resolution `h`.
pub fn solve_invariant_list(
    mw: &MWGraph,
    h: f64,
    max_iterations: usize,
) -> Result<InvariantList, AttractorError> {
    let g = mw.graph();
    let (_, c) = global_ratio(mw);
    let d = mw.max_ambient_diameter();
    // Smallest n with c^n·D ≤ h (at least one iteration).
    let n_min = if d <= h {
        1
    } else {
        ((h / d).ln() / c.ln()).ceil().max(1.0) as usize
    };

    let mut current: Vec<TaggedBoxSet> = g
        .vertices()
        .iter()
        .map(|&v| TaggedBoxSet::full(v, mw.ambient_of(v).clone(), h).unwrap())
        .collect();

    let mut n = 0;
    let mut last_change = f64::INFINITY;
    let cell_diam = current[0].cell_diameter();
    loop {
        if n >= max_iterations {
            let error_bound = c.powi(n as i32) * d / (1.0 - c) + 2.0 * cell_diam;
            return Err(AttractorError::MaxIterationsExceeded {
                max_iterations,
                last_change,
                partial: Box::new(InvariantList {
                    sets: current,
                    iterations: n,
                    residual: last_change,
                    error_bound,
                }),
            });
        }
        let next = hutchinson_step(mw, &current);
        n += 1;
        debug_assert!(
            next.iter().zip(&current).all(|(a, b)| a.is_subset_of(b)),
            "iterates must decrease monotonically"
        );
        // The stopping rule is a conjunction; the Hausdorff change only
        // matters once the a-priori bound c^n·D ≤ h already holds, so skip
        // the distance transform before that.
        if n >= n_min {
            let mut change = 0.0f64;
            for (a, b) in next.iter().zip(&current) {
                change = change.max(hausdorff_distance(a, b)?);
            }
            last_change = change;
            current = next;
            if change <= h {
                break;
            }
        } else {
            current = next;
        }
    }

    // One extra step to measure how far the output is from exactly fixed.
    let probe = hutchinson_step(mw, &current);
    let mut residual = 0.0f64;
    for (a, b) in probe.iter().zip(&current) {
        residual = residual.max(hausdorff_distance(a, b)?);
    }
    let error_bound = c.powi(n as i32) * d / (1.0 - c) + 2.0 * cell_diam;
    Ok(InvariantList {
        sets: current,
        iterations: n,
        residual,
        error_bound,
    })
}

/// Seeded backward random walk: starting from every vertex, repeatedly pick a
/// uniformly random edge into the current vertex and push the point through
/// its map, recording (after `burn_in` steps) into the bucket of the vertex
/// the point lands in. Cheap sampling for plots and cross-checks.
pub fn chaos_game(
    mw: &MWGraph,
    points_per_vertex: usize,
    burn_in: usize,
    seed: u64,
) -> Result<Vec<TaggedPointCloud>, AttractorError> {
    let g = mw.graph();
    let nv = g.vertices().len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut buckets: Vec<Vec<Vec<f64>>> = vec![Vec::new(); nv];
    let budget = (burn_in + points_per_vertex) * nv * 64 + 4096;
    let mut spent = 0usize;

    for (start_idx, &start) in g.vertices().iter().enumerate() {
        let mut vertex = start;
        let mut point = mw.ambient_of(start).center();
        let mut steps = 0usize;
        let _ = start_idx;
        loop {
            let full = buckets.iter().all(|b| b.len() >= points_per_vertex);
            if full || spent >= budget {
                break;
            }
            let inc = g.incoming(vertex);
            let e = inc[rng.gen_range(0..inc.len())];
            point = apply_edge_point(mw, e, &point);
            vertex = g.source(e);
            steps += 1;
            spent += 1;
            if steps > burn_in {
                let bucket = &mut buckets[g.vertex_index(vertex).unwrap()];
                if bucket.len() < points_per_vertex {
                    bucket.push(point.clone());
                }
            }
        }
    }

    if buckets.iter().any(|b| b.len() < points_per_vertex) {
        return Err(AttractorError::Stalled);
    }
    Ok(g.vertices()
        .iter()
        .zip(buckets)
        .map(|(&v, points)| TaggedPointCloud::new(v, points))
        .collect())
}
