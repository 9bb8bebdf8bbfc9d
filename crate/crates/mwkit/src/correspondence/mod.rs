//! Finite-sample model of the bimodule of edge functions over the algebra of
//! vertex functions.
//!
//! Continuous objects are modeled as tables on the covering cell centers:
//! an algebra element is a complex table on the vertex samples, and an
//! order-k bimodule element is a complex table on the admissible pairs
//! (path α of length k, sample x at the range vertex of α). Compositions
//! like `a∘φ_e` or `ξ∘f` force off-grid evaluation; those are resolved by
//! nearest-sample lookup, and every verification below budgets for exactly
//! that interpolation slack — all other operations are pointwise and exact.
//!
//! Submodules: [`certificate`] holds conjugacy certificates, the induced
//! bimodule map, and its matrix/permutation extraction; [`verify`] runs the
//! randomized isometry/bimodule checks; [`decide`] builds certificates for
//! totally disconnected pairs or refuses with evidence.

pub mod certificate;
pub mod decide;
pub mod verify;

pub use certificate::{
    all_edge_permutations, build_v, extract_conjugacy, permutation_field, refute_certificate,
    w_matrix, AddressTable, AffinePair, ConjugacyCertificate, CorrMap, MapDescriptor,
    PermutationField, RefutationReport, RefutationRow, WMatrix,
};
pub use decide::{decide_iso_totally_disconnected, DecideOptions, IsoOutcome, UNDECIDED_NOTE};
pub use verify::{random_algebra_element, random_corr_element, verify_isomorphism, VerifyReport};

use std::collections::BTreeMap;

use num_complex::Complex64;
use thiserror::Error;

use crate::attractor::{AttractorError, InvariantList};
use crate::geometry::{Cell, GeometryError, Point, TaggedBoxSet};
use crate::graph::{paths_of_length, EdgeId, FinitePath, GraphError, VertexId};
use crate::mw::{composite_map, MWGraph, MwError};
use crate::structure::StructureError;
use crate::symbolic::SymbolicError;

#[derive(Debug, Error)]
pub enum CorrError {
    /// Two elements were combined across different sample grids.
    #[error("elements live on different sample grids")]
    GridMismatch,
    #[error("tensor orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("certificate invalid: {0}")]
    CertificateInvalid(String),
    /// The matrix of the map is numerically singular at a sample point.
    #[error("map matrix is singular at sample {sample} of {vertex}")]
    SingularAtSample { vertex: VertexId, sample: usize },
    /// Every full matching at the sample runs through a zero entry.
    #[error("no nonzero permutation matching at sample {sample} of {vertex}")]
    NoConsistentMatching { vertex: VertexId, sample: usize },
    /// Two cover sets overlap but carry different permutations: with
    /// disjoint sibling images that contradicts local constancy.
    #[error("cover sets {first} and {second} overlap with different permutations")]
    InconsistentOverlap { first: usize, second: usize },
    /// Both verdicts must be Disjoint before addresses can define a map.
    #[error("system is not certified totally disconnected: {0}")]
    NotTotallyDisconnected(String),
    #[error("the two systems have different underlying graphs")]
    GraphMismatch,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Mw(#[from] MwError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Attractor(#[from] Box<AttractorError>),
}

/// Per-vertex sample points (the covering cell centers) with fast
/// nearest-sample lookup through the grid's ring search.
#[derive(Debug, Clone)]
pub struct SampleGrid {
    sets: Vec<TaggedBoxSet>,
    samples: Vec<Vec<Point>>,
    cells: Vec<Vec<Cell>>,
    index: Vec<BTreeMap<Cell, usize>>,
}

impl SampleGrid {
    pub fn from_invariant_list(k: &InvariantList) -> SampleGrid {
        let sets: Vec<TaggedBoxSet> = k.sets().to_vec();
        let samples: Vec<Vec<Point>> = sets.iter().map(|s| s.centers()).collect();
        let cells: Vec<Vec<Cell>> = sets.iter().map(|s| s.cells().copied().collect()).collect();
        let index = sets
            .iter()
            .map(|s| s.cells().enumerate().map(|(i, c)| (*c, i)).collect())
            .collect();
        SampleGrid {
            sets,
            samples,
            cells,
            index,
        }
    }

    pub fn resolution(&self) -> f64 {
        self.sets[0].resolution()
    }

    pub fn cell_diameter(&self) -> f64 {
        self.sets[0].cell_diameter()
    }

    pub fn sets(&self) -> &[TaggedBoxSet] {
        &self.sets
    }

    /// Samples at the vertex with the given graph index.
    pub fn samples(&self, vertex_idx: usize) -> &[Point] {
        &self.samples[vertex_idx]
    }

    /// Index of the sample nearest to `p` at the given vertex
    /// (lexicographically first cell on ties).
    pub fn nearest_sample(&self, vertex_idx: usize, p: &[f64]) -> usize {
        let (cell, _) = self.sets[vertex_idx]
            .nearest_cell(p)
            .expect("sample grids are nonempty");
        self.index[vertex_idx][&cell]
    }

    /// Grid cell that contains the given sample.
    pub fn cell_at(&self, vertex_idx: usize, sample_idx: usize) -> Cell {
        self.cells[vertex_idx][sample_idx]
    }
}

/// Shared index layout for order-`k` elements on a fixed grid: all length-k
/// paths (grouped by start vertex, lexicographic within), each carrying one
/// value slot per sample at its range vertex.
pub struct CorrSpace<'a> {
    mw: &'a MWGraph,
    grid: &'a SampleGrid,
    order: usize,
    paths: Vec<FinitePath>,
    /// `offsets[i]` is the first flat slot of path i; one extra entry at the
    /// end holds the total size.
    offsets: Vec<usize>,
    slot_of: BTreeMap<Vec<EdgeId>, usize>,
}

impl<'a> CorrSpace<'a> {
    pub fn new(mw: &'a MWGraph, grid: &'a SampleGrid, order: usize) -> CorrSpace<'a> {
        assert!(order >= 1, "bimodule elements have order at least 1");
        let g = mw.graph();
        let mut paths = Vec::new();
        for &v in g.vertices() {
            paths.extend(paths_of_length(g, v, order));
        }
        let mut offsets = Vec::with_capacity(paths.len() + 1);
        let mut total = 0usize;
        let mut slot_of = BTreeMap::new();
        for (i, p) in paths.iter().enumerate() {
            offsets.push(total);
            total += grid.samples(g.vertex_index(p.range()).unwrap()).len();
            slot_of.insert(p.edges().to_vec(), i);
        }
        offsets.push(total);
        CorrSpace {
            mw,
            grid,
            order,
            paths,
            offsets,
            slot_of,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn grid(&self) -> &SampleGrid {
        self.grid
    }

    pub fn mw(&self) -> &MWGraph {
        self.mw
    }

    pub fn paths(&self) -> &[FinitePath] {
        &self.paths
    }

    pub fn total_len(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn path_slot(&self, edges: &[EdgeId]) -> Option<usize> {
        self.slot_of.get(edges).copied()
    }

    /// Flat index of (path i, sample j).
    pub fn flat(&self, path_idx: usize, sample_idx: usize) -> usize {
        self.offsets[path_idx] + sample_idx
    }

    /// Graph index of the vertex whose samples parameterize path i's fiber.
    pub fn fiber_vertex(&self, path_idx: usize) -> usize {
        self.mw
            .graph()
            .vertex_index(self.paths[path_idx].range())
            .unwrap()
    }

    pub fn zero(&self) -> CorrElement {
        CorrElement {
            order: self.order,
            values: vec![Complex64::new(0.0, 0.0); self.total_len()],
        }
    }

    /// Basis element: 1 on the whole fiber of the given path, 0 elsewhere.
    pub fn delta(&self, edges: &[EdgeId]) -> CorrElement {
        let mut out = self.zero();
        let i = self
            .path_slot(edges)
            .expect("delta must name an existing path");
        for j in 0..(self.offsets[i + 1] - self.offsets[i]) {
            out.values[self.flat(i, j)] = Complex64::new(1.0, 0.0);
        }
        out
    }
}

/// An order-k bimodule element: one complex value per admissible
/// (path, sample) pair of its space.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrElement {
    pub order: usize,
    pub values: Vec<Complex64>,
}

impl CorrElement {
    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn sub(&self, other: &CorrElement) -> CorrElement {
        assert_eq!(self.order, other.order);
        CorrElement {
            order: self.order,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

/// A sampled algebra element: one complex value per vertex sample.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement {
    pub values: Vec<Vec<Complex64>>,
}

impl AlgebraElement {
    pub fn zero(grid: &SampleGrid) -> AlgebraElement {
        AlgebraElement {
            values: grid
                .samples
                .iter()
                .map(|s| vec![Complex64::new(0.0, 0.0); s.len()])
                .collect(),
        }
    }

    pub fn constant(grid: &SampleGrid, z: Complex64) -> AlgebraElement {
        AlgebraElement {
            values: grid.samples.iter().map(|s| vec![z; s.len()]).collect(),
        }
    }

    /// Tabulates a pointwise function of the sample location.
    pub fn from_fn(
        grid: &SampleGrid,
        mut f: impl FnMut(usize, &[f64]) -> Complex64,
    ) -> AlgebraElement {
        AlgebraElement {
            values: grid
                .samples
                .iter()
                .enumerate()
                .map(|(vi, pts)| pts.iter().map(|p| f(vi, p)).collect())
                .collect(),
        }
    }

    pub fn sup_norm(&self) -> f64 {
        self.values
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect())
                .collect(),
        }
    }

    pub fn conj(&self) -> AlgebraElement {
        AlgebraElement {
            values: self
                .values
                .iter()
                .map(|a| a.iter().map(|z| z.conj()).collect())
                .collect(),
        }
    }

    /// Pointwise product.
    pub fn mul(&self, other: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x * y).collect())
                .collect(),
        }
    }
}

/// `(ξ·a)(α, x) = ξ(α, x)·a(x)` — pointwise and exact.
pub fn right_action(space: &CorrSpace, xi: &CorrElement, a: &AlgebraElement) -> CorrElement {
    assert_eq!(space.order, xi.order);
    let mut out = xi.clone();
    for i in 0..space.paths.len() {
        let vi = space.fiber_vertex(i);
        for j in 0..space.grid.samples(vi).len() {
            out.values[space.flat(i, j)] *= a.values[vi][j];
        }
    }
    out
}

/// `(a·ξ)(α, x) = a(φ_α(x))·ξ(α, x)`: the image point is computed by the
/// exact composite map, then `a` is read at the nearest sample of the start
/// vertex — the one place interpolation enters.
pub fn left_action(space: &CorrSpace, a: &AlgebraElement, xi: &CorrElement) -> CorrElement {
    assert_eq!(space.order, xi.order);
    let g = space.mw.graph();
    let mut out = xi.clone();
    for (i, path) in space.paths.iter().enumerate() {
        let comp = composite_map(space.mw, path);
        let vi = space.fiber_vertex(i);
        let si = g.vertex_index(path.source()).unwrap();
        for (j, x) in space.grid.samples(vi).iter().enumerate() {
            let y = comp.apply(x);
            let a_val = a.values[si][space.grid.nearest_sample(si, &y)];
            out.values[space.flat(i, j)] *= a_val;
        }
    }
    out
}

/// `⟨ξ, η⟩(x) = Σ_{α: x ∈ fiber(α)} ξ(α, x)̄ · η(α, x)` — conjugate-linear
/// in the first argument, supported on samples that lie in some fiber.
pub fn inner_product(
    space: &CorrSpace,
    xi: &CorrElement,
    eta: &CorrElement,
) -> Result<AlgebraElement, CorrError> {
    if xi.order != eta.order {
        return Err(CorrError::OrderMismatch {
            left: xi.order,
            right: eta.order,
        });
    }
    assert_eq!(space.order, xi.order);
    let mut out = AlgebraElement::zero(space.grid);
    for i in 0..space.paths.len() {
        let vi = space.fiber_vertex(i);
        for j in 0..space.grid.samples(vi).len() {
            let f = space.flat(i, j);
            out.values[vi][j] += xi.values[f].conj() * eta.values[f];
        }
    }
    Ok(out)
}

/// Balanced tensor product:
/// `(ξ⊗η)(αβ, x) = ξ(α, φ_β(x))·η(β, x)` with `φ_β` the composite along the
/// tail. The middle-balancing identity `ξ·a ⊗ η = ξ ⊗ a·η` then holds up to
/// the interpolation slack of reading ξ and a at nearest samples.
pub fn tensor(
    out_space: &CorrSpace,
    lhs_space: &CorrSpace,
    lhs: &CorrElement,
    rhs_space: &CorrSpace,
    rhs: &CorrElement,
) -> Result<CorrElement, CorrError> {
    if !std::ptr::eq(out_space.grid, lhs_space.grid)
        || !std::ptr::eq(out_space.grid, rhs_space.grid)
    {
        return Err(CorrError::GridMismatch);
    }
    if out_space.order != lhs.order + rhs.order {
        return Err(CorrError::OrderMismatch {
            left: lhs.order,
            right: rhs.order,
        });
    }
    let g = out_space.mw.graph();
    let mut out = out_space.zero();
    for (i, gamma) in out_space.paths.iter().enumerate() {
        let (alpha, beta) = gamma.edges().split_at(lhs.order);
        let li = lhs_space.path_slot(alpha).expect("prefix is a valid path");
        let ri = rhs_space.path_slot(beta).expect("suffix is a valid path");
        let beta_path = FinitePath::new(g, beta.to_vec()).expect("suffix chains");
        let comp = composite_map(out_space.mw, &beta_path);
        // ξ is read at the nearest sample to φ_β(x) at the junction vertex.
        let junction = g.vertex_index(beta_path.source()).unwrap();
        let vi = out_space.fiber_vertex(i);
        for (j, x) in out_space.grid.samples(vi).iter().enumerate() {
            let y = comp.apply(x);
            let lj = out_space.grid.nearest_sample(junction, &y);
            out.values[out_space.flat(i, j)] =
                lhs.values[lhs_space.flat(li, lj)] * rhs.values[rhs_space.flat(ri, j)];
        }
    }
    Ok(out)
}
