//! Conjugacy certificates and the bimodule map they induce.
//!
//! A certificate packages a candidate homeomorphism `f: K¹ → K²` together
//! with a finite cover `{U_j}` of `K¹` and one edge assignment `σ_j` per
//! cover set. The stored relation is `f⁻¹ ∘ ψ_{σ_j(e)} ∘ f = φ_e` on `U_j`
//! (ψ the second family, φ the first). From a certificate, [`build_v`]
//! produces the induced map on sampled bimodule elements,
//! `V(ξ)(e, x) = ξ(σ_j(e), f(x))` with `j` the first cover set containing
//! `x`, plus the algebra pullback `β(b) = b∘f`. Overlapping cover sets are
//! legal and flagged; the first-match rule keeps the map single-valued on
//! overlaps (on a partition it coincides with the indicator-sum form).
//!
//! The converse direction starts from any purported isomorphism given by
//! its matrix `w_eg(x) = ⟨δ_e, W(δ_g)⟩(x)` in the edge bases and recovers
//! a certificate: per sample, the edge assignment is the maximum-product
//! matching of `|w_eg(x)|` (lexicographically smallest among maximizers),
//! and samples sharing an assignment merge into one cover set.

use std::collections::{BTreeMap, BTreeSet};

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{AlgebraElement, CorrElement, CorrError, CorrSpace, SampleGrid};
use crate::geometry::{euclid, Point, TaggedBoxSet};
use crate::graph::{DirectedGraph, EdgeId};
use crate::mw::{AffineMap, MWGraph};

/// A forward/inverse pair of affine maps acting on one vertex component.
#[derive(Debug, Clone)]
pub struct AffinePair {
    pub forward: AffineMap,
    pub inverse: AffineMap,
}

impl AffinePair {
    pub fn identity(dim: usize) -> AffinePair {
        AffinePair {
            forward: AffineMap::identity(dim),
            inverse: AffineMap::identity(dim),
        }
    }

    /// Builds the pair from the forward map, inverting its linear part.
    pub fn from_forward(forward: AffineMap) -> Option<AffinePair> {
        let inverse = forward.inverse()?;
        Some(AffinePair { forward, inverse })
    }
}

/// A map given pointwise on the covering samples: `forward[v][i]` is the
/// image of sample `i` of the source grid at vertex `v`, and `inverse` the
/// same for the target grid. Off-sample arguments snap to the nearest
/// sample first.
#[derive(Debug, Clone)]
pub struct AddressTable {
    pub forward: Vec<Vec<Point>>,
    pub inverse: Vec<Vec<Point>>,
}

/// How the candidate homeomorphism is represented.
#[derive(Debug, Clone)]
pub enum MapDescriptor {
    /// One affine pair per vertex (exact, defined everywhere).
    Affine(Vec<AffinePair>),
    /// Sample-indexed tables (defined on grids, snapped elsewhere).
    AddressTable(AddressTable),
}

impl MapDescriptor {
    /// Forward image of `x` living at the vertex with graph index `vi`.
    /// `from` is the grid of the domain system (used to snap table lookups).
    pub fn apply(&self, from: &SampleGrid, vi: usize, x: &[f64]) -> Point {
        match self {
            MapDescriptor::Affine(pairs) => pairs[vi].forward.apply(x),
            MapDescriptor::AddressTable(t) => t.forward[vi][from.nearest_sample(vi, x)].clone(),
        }
    }

    /// Inverse image of `y` living at the vertex with graph index `vi`.
    /// `to` is the grid of the target system.
    pub fn apply_inverse(&self, to: &SampleGrid, vi: usize, y: &[f64]) -> Point {
        match self {
            MapDescriptor::Affine(pairs) => pairs[vi].inverse.apply(y),
            MapDescriptor::AddressTable(t) => t.inverse[vi][to.nearest_sample(vi, y)].clone(),
        }
    }
}

/// Candidate conjugacy between two systems over the same directed graph:
/// the relation `f⁻¹ ∘ ψ_{σ_j(e)} ∘ f = φ_e` is claimed on each `U_j`.
#[derive(Debug, Clone)]
pub struct ConjugacyCertificate {
    pub f: MapDescriptor,
    /// `cover[j][vi]` is the part of the open set `U_j` lying in the
    /// ambient of the vertex with graph index `vi` (a box set; may be
    /// empty at vertices the set does not meet).
    pub cover: Vec<Vec<TaggedBoxSet>>,
    /// `sigmas[j][e]` is `σ_j` applied to the edge with id `e`.
    pub sigmas: Vec<Vec<EdgeId>>,
}

impl ConjugacyCertificate {
    /// Identity homeomorphism with a single cover set (the whole covering)
    /// and the identity edge assignment.
    pub fn identity(mw: &MWGraph, grid: &SampleGrid) -> ConjugacyCertificate {
        let pairs = vec![AffinePair::identity(mw.dim()); grid.sets().len()];
        ConjugacyCertificate {
            f: MapDescriptor::Affine(pairs),
            cover: vec![grid.sets().to_vec()],
            sigmas: vec![mw.graph().edge_ids().collect()],
        }
    }

    /// Replaces the edge assignment of a single-cover certificate.
    pub fn with_sigma(mut self, sigma: Vec<EdgeId>) -> ConjugacyCertificate {
        assert_eq!(
            self.sigmas.len(),
            1,
            "with_sigma expects a single cover set"
        );
        self.sigmas = vec![sigma];
        self
    }
}

/// All edge bijections preserving source and range (the assignments a
/// certificate may legally carry), in lexicographic order of their tables.
pub fn all_edge_permutations(g: &DirectedGraph) -> Vec<Vec<EdgeId>> {
    let mut classes: BTreeMap<(u32, u32), Vec<u32>> = BTreeMap::new();
    for e in g.edge_ids() {
        classes
            .entry((g.source(e).0, g.range(e).0))
            .or_default()
            .push(e.0);
    }
    let mut tables: Vec<Vec<EdgeId>> = vec![g.edge_ids().collect()];
    for members in classes.values() {
        let perms = lex_permutations(members.len());
        let mut next = Vec::with_capacity(tables.len() * perms.len());
        for t in &tables {
            for p in &perms {
                let mut t2 = t.clone();
                for (slot, &pick) in p.iter().enumerate() {
                    t2[members[slot] as usize] = EdgeId(members[pick]);
                }
                next.push(t2);
            }
        }
        tables = next;
    }
    tables.sort();
    tables
}

/// Permutations of `0..m` in lexicographic order.
fn lex_permutations(m: usize) -> Vec<Vec<usize>> {
    assert!(m <= 8, "matching is brute-force; fibers up to 8 edges");
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(m);
    let mut used = vec![false; m];
    fn rec(m: usize, current: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if current.len() == m {
            out.push(current.clone());
            return;
        }
        for i in 0..m {
            if !used[i] {
                used[i] = true;
                current.push(i);
                rec(m, current, used, out);
                current.pop();
                used[i] = false;
            }
        }
    }
    rec(m, &mut current, &mut used, &mut out);
    out
}

fn point_in_piece(piece: &TaggedBoxSet, p: &[f64]) -> bool {
    if piece.is_empty() {
        return false;
    }
    let (_, dist) = piece.nearest_cell(p).expect("nonempty piece");
    dist <= 1e-9 * piece.resolution()
}

/// The sampled bimodule map induced by a certificate, with its validated
/// bookkeeping: first-match cover membership per sample and the snapped
/// forward images of `f`.
pub struct CorrMap<'a> {
    mw2: &'a MWGraph,
    grid2: &'a SampleGrid,
    sigmas: Vec<Vec<EdgeId>>,
    /// First cover set containing each sample of the domain grid.
    cover_of: Vec<Vec<usize>>,
    /// Forward images `f(x)` of the domain samples.
    fx: Vec<Vec<Point>>,
    /// Those images snapped to the target grid at the same vertex.
    fx_same: Vec<Vec<usize>>,
    /// Whether some sample lies in more than one cover set. Legal (the
    /// cover need not be a partition) but worth surfacing.
    pub overlapping_cover: bool,
    /// Pullback bookkeeping also used by `beta`.
    f: MapDescriptor,
}

/// Validates a certificate against the two systems and builds the induced
/// map. Rejects covers with gaps and maps that fail to be bijections at
/// covering resolution; a merely overlapping cover is flagged, not
/// rejected. Edge assignments are checked for shape only — a wrong σ is
/// the verifier's job to expose, not a malformed input.
pub fn build_v<'a>(
    cert: &ConjugacyCertificate,
    mw1: &'a MWGraph,
    mw2: &'a MWGraph,
    grid1: &'a SampleGrid,
    grid2: &'a SampleGrid,
) -> Result<CorrMap<'a>, CorrError> {
    let g1 = mw1.graph();
    if !g1.same_shape(mw2.graph()) {
        return Err(CorrError::GraphMismatch);
    }
    let nv = g1.vertices().len();
    let ne = g1.edge_count();
    if cert.cover.is_empty() || cert.cover.len() != cert.sigmas.len() {
        return Err(CorrError::CertificateInvalid(format!(
            "{} cover sets but {} edge assignments",
            cert.cover.len(),
            cert.sigmas.len()
        )));
    }
    for (j, sigma) in cert.sigmas.iter().enumerate() {
        if sigma.len() != ne || sigma.iter().any(|g| (g.0 as usize) >= ne) {
            return Err(CorrError::CertificateInvalid(format!(
                "edge assignment {j} is not a table over the {ne} edge ids"
            )));
        }
    }
    for (j, piece) in cert.cover.iter().enumerate() {
        if piece.len() != nv {
            return Err(CorrError::CertificateInvalid(format!(
                "cover set {j} has {} vertex components, expected {nv}",
                piece.len()
            )));
        }
    }

    // First-match cover membership; a sample in no set is a cover gap.
    let mut cover_of = Vec::with_capacity(nv);
    let mut overlapping = false;
    for vi in 0..nv {
        let mut row = Vec::with_capacity(grid1.samples(vi).len());
        for (i, x) in grid1.samples(vi).iter().enumerate() {
            let hits: Vec<usize> = (0..cert.cover.len())
                .filter(|&j| point_in_piece(&cert.cover[j][vi], x))
                .collect();
            match hits.first() {
                None => {
                    return Err(CorrError::CertificateInvalid(format!(
                        "cover gap: sample {i} at vertex {} lies in no cover set",
                        grid1.sets()[vi].vertex()
                    )))
                }
                Some(&j) => row.push(j),
            }
            overlapping |= hits.len() > 1;
        }
        cover_of.push(row);
    }

    // f must send the domain covering bijectively onto the target covering,
    // never straying more than one cell from it.
    let mut fx = Vec::with_capacity(nv);
    let mut fx_same = Vec::with_capacity(nv);
    for vi in 0..nv {
        let mut images = Vec::with_capacity(grid1.samples(vi).len());
        let mut snapped = Vec::with_capacity(grid1.samples(vi).len());
        let mut hit_cells = BTreeSet::new();
        for (i, x) in grid1.samples(vi).iter().enumerate() {
            let y = cert.f.apply(grid1, vi, x);
            let (cell, dist) = grid2.sets()[vi].nearest_cell(&y)?;
            if dist > grid2.resolution() + 1e-12 {
                return Err(CorrError::CertificateInvalid(format!(
                    "f sends sample {i} at vertex {} a distance {dist:.3e} outside \
                     the target covering",
                    grid1.sets()[vi].vertex()
                )));
            }
            hit_cells.insert(cell);
            snapped.push(grid2.nearest_sample(vi, &y));
            images.push(y);
        }
        let n1 = grid1.samples(vi).len();
        let n2 = grid2.samples(vi).len();
        if hit_cells.len() != n1 || n1 != n2 {
            return Err(CorrError::CertificateInvalid(format!(
                "f is not a bijection at covering resolution at vertex {}: \
                 {n1} samples cover {} target cells of {n2}",
                grid1.sets()[vi].vertex(),
                hit_cells.len()
            )));
        }
        fx.push(images);
        fx_same.push(snapped);
    }

    Ok(CorrMap {
        mw2,
        grid2,
        sigmas: cert.sigmas.clone(),
        cover_of,
        fx,
        fx_same,
        overlapping_cover: overlapping,
        f: cert.f.clone(),
    })
}

impl<'a> CorrMap<'a> {
    /// Applies the map to an order-1 element over the *second* system,
    /// producing an order-1 element over the first.
    pub fn apply(&self, s1: &CorrSpace, s2: &CorrSpace, xi: &CorrElement) -> CorrElement {
        assert_eq!(s1.order(), 1, "the map acts on order-1 elements");
        assert_eq!(xi.order, 1);
        let g2 = self.mw2.graph();
        let mut out = s1.zero();
        for (pi, path) in s1.paths().iter().enumerate() {
            let e = path.edges()[0];
            let vi = s1.fiber_vertex(pi);
            for j in 0..self.cover_of[vi].len() {
                let sigma = &self.sigmas[self.cover_of[vi][j]];
                let ge = sigma[e.0 as usize];
                let wi = g2.vertex_index(g2.range(ge)).unwrap();
                let sample = if wi == vi {
                    self.fx_same[vi][j]
                } else {
                    self.grid2.nearest_sample(wi, &self.fx[vi][j])
                };
                let slot2 = s2.path_slot(&[ge]).expect("edge path exists");
                out.values[s1.flat(pi, j)] = xi.values[s2.flat(slot2, sample)];
            }
        }
        out
    }

    /// Algebra pullback `β(b) = b ∘ f`, read at the snapped image samples.
    pub fn beta(&self, b: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            values: self
                .fx_same
                .iter()
                .enumerate()
                .map(|(vi, row)| row.iter().map(|&s| b.values[vi][s]).collect())
                .collect(),
        }
    }

    pub fn descriptor(&self) -> &MapDescriptor {
        &self.f
    }
}

/// The matrix of a bimodule map in the edge bases, sampled: at each sample
/// of the fiber vertex, `block[row, col] = V(δ_{col})(row, x)` over the
/// edges whose range is that vertex.
#[derive(Debug, Clone)]
pub struct WMatrix {
    /// Per vertex (graph index): the edges with that range, sorted by id.
    pub fiber_edges: Vec<Vec<EdgeId>>,
    /// Per vertex, per sample: the square matrix over the fiber edges.
    pub blocks: Vec<Vec<DMatrix<Complex64>>>,
}

/// Tabulates the matrix of the map by applying it to every edge basis
/// element.
pub fn w_matrix(vmap: &CorrMap, s1: &CorrSpace, s2: &CorrSpace) -> WMatrix {
    let g = s1.mw().graph();
    let nv = g.vertices().len();
    let mut fiber_edges: Vec<Vec<EdgeId>> = vec![Vec::new(); nv];
    for e in g.edge_ids() {
        fiber_edges[g.vertex_index(g.range(e)).unwrap()].push(e);
    }
    let mut blocks: Vec<Vec<DMatrix<Complex64>>> = (0..nv)
        .map(|vi| {
            let m = fiber_edges[vi].len();
            vec![DMatrix::zeros(m, m); s1.grid().samples(vi).len()]
        })
        .collect();
    for (vi, fiber) in fiber_edges.iter().enumerate() {
        for (col, &ge) in fiber.iter().enumerate() {
            let image = vmap.apply(s1, s2, &s2.delta(&[ge]));
            for (row, &e) in fiber.iter().enumerate() {
                let slot = s1.path_slot(&[e]).unwrap();
                for (j, block) in blocks[vi].iter_mut().enumerate() {
                    block[(row, col)] = image.values[s1.flat(slot, j)];
                }
            }
        }
    }
    WMatrix {
        fiber_edges,
        blocks,
    }
}

/// Recovers a certificate from a sampled matrix: per sample the edge
/// assignment is the maximum-product matching of the entry moduli
/// (lexicographically smallest among maximizers), and samples with equal
/// assignments merge into maximal cover sets. Fails on numerically
/// singular blocks and on samples where every full matching crosses a
/// zero entry.
pub fn extract_conjugacy(
    w: &WMatrix,
    f: MapDescriptor,
    mw1: &MWGraph,
    grid1: &SampleGrid,
) -> Result<ConjugacyCertificate, CorrError> {
    let g = mw1.graph();
    let ne = g.edge_count();
    let nv = g.vertices().len();
    let mut groups: BTreeMap<Vec<u32>, Vec<(usize, usize)>> = BTreeMap::new();
    for vi in 0..nv {
        let fiber = &w.fiber_edges[vi];
        let m = fiber.len();
        let perms = lex_permutations(m);
        for (j, block) in w.blocks[vi].iter().enumerate() {
            if m > 0 && block.determinant().norm() <= 1e-9 {
                return Err(CorrError::SingularAtSample {
                    vertex: grid1.sets()[vi].vertex(),
                    sample: j,
                });
            }
            let mut best: Option<(&Vec<usize>, f64)> = None;
            for p in &perms {
                let prod: f64 = (0..m).map(|row| block[(row, p[row])].norm()).product();
                if best.as_ref().is_none_or(|(_, b)| prod > *b) {
                    best = Some((p, prod));
                }
            }
            let (matching, prod) = best.expect("at least the identity matching");
            if prod.is_nan() || prod <= 0.0 {
                return Err(CorrError::NoConsistentMatching {
                    vertex: grid1.sets()[vi].vertex(),
                    sample: j,
                });
            }
            let mut table: Vec<u32> = (0..ne as u32).collect();
            for (row, &col) in matching.iter().enumerate() {
                table[fiber[row].0 as usize] = fiber[col].0;
            }
            groups.entry(table).or_default().push((vi, j));
        }
    }

    let mut cover = Vec::with_capacity(groups.len());
    let mut sigmas = Vec::with_capacity(groups.len());
    for (table, members) in groups {
        let mut piece: Vec<TaggedBoxSet> = (0..nv)
            .map(|vi| {
                TaggedBoxSet::empty(
                    grid1.sets()[vi].vertex(),
                    grid1.sets()[vi].ambient().clone(),
                    grid1.resolution(),
                )
                .expect("grid resolution is valid")
            })
            .collect();
        for (vi, j) in members {
            piece[vi].insert_cell(grid1.cell_at(vi, j));
        }
        cover.push(piece);
        sigmas.push(table.into_iter().map(EdgeId).collect());
    }
    Ok(ConjugacyCertificate { f, cover, sigmas })
}

/// The local edge assignments of a certificate as a function of the
/// sample, witnessing that the assignment is locally constant.
#[derive(Debug, Clone)]
pub struct PermutationField {
    /// Per vertex (graph index), per sample: index into `sigmas`.
    pub assignment: Vec<Vec<usize>>,
    pub sigmas: Vec<Vec<EdgeId>>,
}

impl PermutationField {
    pub fn sigma_at(&self, vertex_idx: usize, sample_idx: usize) -> &[EdgeId] {
        &self.sigmas[self.assignment[vertex_idx][sample_idx]]
    }
}

/// Assembles the sample-to-assignment table of a certificate over a system
/// whose sibling images are certified pairwise disjoint. Overlapping cover
/// sets must agree on σ there — with disjoint images the assignment is
/// locally constant, so a disagreement on an overlap is a defect.
pub fn permutation_field(
    cert: &ConjugacyCertificate,
    grid1: &SampleGrid,
    class1: &crate::structure::DisconnectednessReport,
) -> Result<PermutationField, CorrError> {
    if class1.verdict != crate::structure::Verdict::Disjoint {
        return Err(CorrError::NotTotallyDisconnected(format!(
            "classification verdict is {}",
            class1.verdict
        )));
    }
    let nv = grid1.sets().len();
    let mut assignment = Vec::with_capacity(nv);
    for vi in 0..nv {
        let mut row = Vec::with_capacity(grid1.samples(vi).len());
        for (i, x) in grid1.samples(vi).iter().enumerate() {
            let hits: Vec<usize> = (0..cert.cover.len())
                .filter(|&j| vi < cert.cover[j].len() && point_in_piece(&cert.cover[j][vi], x))
                .collect();
            let Some(&first) = hits.first() else {
                return Err(CorrError::CertificateInvalid(format!(
                    "cover gap: sample {i} at vertex {} lies in no cover set",
                    grid1.sets()[vi].vertex()
                )));
            };
            for &other in &hits[1..] {
                if cert.sigmas[other] != cert.sigmas[first] {
                    return Err(CorrError::InconsistentOverlap {
                        first,
                        second: other,
                    });
                }
            }
            row.push(first);
        }
        assignment.push(row);
    }
    Ok(PermutationField {
        assignment,
        sigmas: cert.sigmas.clone(),
    })
}

/// One row of a refutation: the worst conjugation defect of edge `e` over
/// the samples of cover set `cover_set`.
#[derive(Debug, Clone)]
pub struct RefutationRow {
    pub cover_set: usize,
    pub edge: EdgeId,
    /// `sup |f⁻¹(ψ_{σ_j(e)}(f(x))) − φ_e(x)|` over the scanned samples.
    pub residual: f64,
    pub samples: usize,
}

/// Outcome of checking the certificate's defining relation on the grid.
#[derive(Debug, Clone)]
pub struct RefutationReport {
    pub rows: Vec<RefutationRow>,
    /// Largest row residual (the certificate-level defect).
    pub max_residual: f64,
    /// True when some covering sample lies in no cover set.
    pub cover_gap: bool,
    pub tol: f64,
    /// True when every row residual is within `tol` (gaps flagged apart).
    pub pass: bool,
}

/// Evaluates `f⁻¹ ∘ ψ_{σ_j(e)} ∘ f` against `φ_e` on every cover set and
/// every sample, without judging the certificate's other credentials: a
/// large residual refutes it, a cover gap is flagged alongside.
pub fn refute_certificate(
    cert: &ConjugacyCertificate,
    mw1: &MWGraph,
    mw2: &MWGraph,
    grid1: &SampleGrid,
    grid2: &SampleGrid,
    tol: f64,
) -> RefutationReport {
    let g1 = mw1.graph();
    let g2 = mw2.graph();
    assert!(
        g1.same_shape(g2),
        "refutation compares systems over one shared graph"
    );
    let nv = g1.vertices().len();
    let mut rows = Vec::new();
    for (j, (piece, sigma)) in cert.cover.iter().zip(&cert.sigmas).enumerate() {
        for e in g1.edge_ids() {
            let vi = g1.vertex_index(g1.range(e)).unwrap();
            let ge = sigma[e.0 as usize];
            let si = g2.vertex_index(g2.source(ge)).unwrap();
            let mut sup = 0.0f64;
            let mut count = 0usize;
            for x in grid1.samples(vi) {
                if !point_in_piece(&piece[vi], x) {
                    continue;
                }
                let y = cert.f.apply(grid1, vi, x);
                let z = mw2.map_of(ge).apply(&y);
                let back = cert.f.apply_inverse(grid2, si, &z);
                let want = mw1.map_of(e).apply(x);
                sup = sup.max(euclid(&back, &want));
                count += 1;
            }
            if count > 0 {
                rows.push(RefutationRow {
                    cover_set: j,
                    edge: e,
                    residual: sup,
                    samples: count,
                });
            }
        }
    }
    let mut cover_gap = false;
    'outer: for vi in 0..nv {
        for x in grid1.samples(vi) {
            if !cert.cover.iter().any(|p| point_in_piece(&p[vi], x)) {
                cover_gap = true;
                break 'outer;
            }
        }
    }
    let max_residual = rows.iter().map(|r| r.residual).fold(0.0, f64::max);
    RefutationReport {
        max_residual,
        cover_gap,
        tol,
        pass: rows.iter().all(|r| r.residual <= tol),
        rows,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::attractor::solve_invariant_list;
    use crate::attractor::tests::{cantor_thirds, tent_pair};
    use crate::correspondence::verify::random_corr_element;
    use crate::structure::classify_disconnected;
    use nalgebra::DVector;

    fn mirror_map() -> AffinePair {
        AffinePair::from_forward(
            AffineMap::new(
                DMatrix::from_element(1, 1, -1.0),
                DVector::from_element(1, 1.0),
            )
            .unwrap(),
        )
        .unwrap()
    }

    fn cantor_setup(h: f64) -> (MWGraph, SampleGrid) {
        let mw = cantor_thirds();
        let grid = SampleGrid::from_invariant_list(&solve_invariant_list(&mw, h, 64).unwrap());
        (mw, grid)
    }

    #[test]
    fn identity_certificate_induces_the_identity_map() {
        let (mw, grid) = cantor_setup(3.0f64.powi(-4));
        let cert = ConjugacyCertificate::identity(&mw, &grid);
        let vmap = build_v(&cert, &mw, &mw, &grid, &grid).unwrap();
        assert!(!vmap.overlapping_cover);
        let s = CorrSpace::new(&mw, &grid, 1);
        let xi = random_corr_element(&s, 9);
        assert_eq!(vmap.apply(&s, &s, &xi), xi);
        let b = AlgebraElement::from_fn(&grid, |_, p| Complex64::new(p[0], 1.0 - p[0]));
        assert_eq!(vmap.beta(&b), b);
    }

    #[test]
    fn mirror_certificate_swaps_the_basis_elements() {
        let (mw, grid) = cantor_setup(3.0f64.powi(-5));
        let cert =
            ConjugacyCertificate::identity(&mw, &grid).with_sigma(vec![EdgeId(1), EdgeId(0)]);
        let cert = ConjugacyCertificate {
            f: MapDescriptor::Affine(vec![mirror_map()]),
            ..cert
        };
        let vmap = build_v(&cert, &mw, &mw, &grid, &grid).unwrap();
        let s = CorrSpace::new(&mw, &grid, 1);
        // V(δ₁)(e, x) = δ₁(σ(e), f(x)) is 1 exactly when σ(e) = e₁, i.e. on
        // the fiber of e₀ — the basis elements swap.
        assert_eq!(
            vmap.apply(&s, &s, &s.delta(&[EdgeId(1)])),
            s.delta(&[EdgeId(0)])
        );
        assert_eq!(
            vmap.apply(&s, &s, &s.delta(&[EdgeId(0)])),
            s.delta(&[EdgeId(1)])
        );
    }

    #[test]
    fn mirror_certificate_has_vanishing_refutation_residual() {
        let (mw, grid) = cantor_setup(3.0f64.powi(-5));
        let cert = ConjugacyCertificate {
            f: MapDescriptor::Affine(vec![mirror_map()]),
            ..ConjugacyCertificate::identity(&mw, &grid)
        }
        .with_sigma(vec![EdgeId(1), EdgeId(0)]);
        let report = refute_certificate(&cert, &mw, &mw, &grid, &grid, 1e-12);
        assert!(report.pass, "max residual {:.3e}", report.max_residual);
        assert!(!report.cover_gap);
        assert!(report.max_residual <= 1e-12);
        assert_eq!(report.rows.len(), 2);
    }

    #[test]
    fn mirror_map_with_identity_sigma_is_refuted() {
        let (mw, grid) = cantor_setup(3.0f64.powi(-5));
        let cert = ConjugacyCertificate {
            f: MapDescriptor::Affine(vec![mirror_map()]),
            ..ConjugacyCertificate::identity(&mw, &grid)
        };
        let report = refute_certificate(&cert, &mw, &mw, &grid, &grid, 1e-6);
        assert!(!report.pass);
        // f⁻¹(φ₀(f(x))) − φ₀(x) = (1 − (1−x)/3) − x/3 = 2/3 at every sample.
        for row in &report.rows {
            assert!((row.residual - 2.0 / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn w_matrix_round_trip_recovers_the_swap() {
        let (mw, grid) = cantor_setup(3.0f64.powi(-5));
        let cert = ConjugacyCertificate {
            f: MapDescriptor::Affine(vec![mirror_map()]),
            ..ConjugacyCertificate::identity(&mw, &grid)
        }
        .with_sigma(vec![EdgeId(1), EdgeId(0)]);
        let vmap = build_v(&cert, &mw, &mw, &grid, &grid).unwrap();
        let s = CorrSpace::new(&mw, &grid, 1);
        let w = w_matrix(&vmap, &s, &s);
        // Every sample block is the permutation matrix of the swap.
        for block in &w.blocks[0] {
            assert_eq!(block[(0, 0)], Complex64::new(0.0, 0.0));
            assert_eq!(block[(0, 1)], Complex64::new(1.0, 0.0));
            assert_eq!(block[(1, 0)], Complex64::new(1.0, 0.0));
            assert_eq!(block[(1, 1)], Complex64::new(0.0, 0.0));
        }
        let recovered =
            extract_conjugacy(&w, MapDescriptor::Affine(vec![mirror_map()]), &mw, &grid).unwrap();
        assert_eq!(recovered.sigmas, vec![vec![EdgeId(1), EdgeId(0)]]);
        assert_eq!(recovered.cover.len(), 1);
        // The single cover set contains every covering cell.
        assert_eq!(recovered.cover[0][0].len(), grid.samples(0).len());
        assert!(recovered.cover[0][0].is_subset_of(&grid.sets()[0]));
    }

    #[test]
    fn extraction_rejects_singular_blocks() {
        let (mw, grid) = cantor_setup(3.0f64.powi(-3));
        let n = grid.samples(0).len();
        // Invertible everywhere (det = 0.94) except one sample where a
        // zeroed column collapses the block.
        let base = DMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(1.0, 0.0),
                Complex64::new(0.2, 0.0),
                Complex64::new(0.3, 0.0),
                Complex64::new(1.0, 0.0),
            ],
        );
        let mut blocks = vec![base; n];
        blocks[3][(0, 1)] = Complex64::new(0.0, 0.0);
        blocks[3][(1, 1)] = Complex64::new(0.0, 0.0);
        let w = WMatrix {
            fiber_edges: vec![vec![EdgeId(0), EdgeId(1)]],
            blocks: vec![blocks],
        };
        let err = extract_conjugacy(
            &w,
            MapDescriptor::Affine(vec![AffinePair::identity(1)]),
            &mw,
            &grid,
        )
        .unwrap_err();
        match err {
            CorrError::SingularAtSample { sample, .. } => assert_eq!(sample, 3),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn extraction_breaks_ties_lexicographically() {
        let (mw, grid) = cantor_setup(3.0f64.powi(-3));
        let n = grid.samples(0).len();
        // Equal moduli everywhere but invertible (rotation-like): both
        // matchings tie at product 1/2; the identity wins the tie.
        let half = Complex64::new(0.5, 0.0);
        let block = DMatrix::from_row_slice(2, 2, &[half, half, -half, half]);
        let w = WMatrix {
            fiber_edges: vec![vec![EdgeId(0), EdgeId(1)]],
            blocks: vec![vec![block; n]],
        };
        let cert = extract_conjugacy(
            &w,
            MapDescriptor::Affine(vec![AffinePair::identity(1)]),
            &mw,
            &grid,
        )
        .unwrap();
        assert_eq!(cert.sigmas, vec![vec![EdgeId(0), EdgeId(1)]]);
    }

    #[test]
    fn permutation_field_is_constant_for_the_mirror_certificate() {
        let (mw, grid) = cantor_setup(3.0f64.powi(-5));
        let k = solve_invariant_list(&mw, 3.0f64.powi(-5), 64).unwrap();
        let class = classify_disconnected(&mw, &k, 2).unwrap();
        let cert = ConjugacyCertificate {
            f: MapDescriptor::Affine(vec![mirror_map()]),
            ..ConjugacyCertificate::identity(&mw, &grid)
        }
        .with_sigma(vec![EdgeId(1), EdgeId(0)]);
        let field = permutation_field(&cert, &grid, &class).unwrap();
        for j in 0..grid.samples(0).len() {
            assert_eq!(field.sigma_at(0, j), &[EdgeId(1), EdgeId(0)]);
        }
    }

    #[test]
    fn permutation_field_requires_a_disjoint_verdict() {
        let mw = tent_pair();
        let k = solve_invariant_list(&mw, 2.0f64.powi(-7), 64).unwrap();
        let grid = SampleGrid::from_invariant_list(&k);
        let class = classify_disconnected(&mw, &k, 1).unwrap();
        let cert = ConjugacyCertificate::identity(&mw, &grid);
        match permutation_field(&cert, &grid, &class) {
            Err(CorrError::NotTotallyDisconnected(_)) => {}
            other => panic!("expected a precondition failure, got {other:?}"),
        }
    }

    #[test]
    fn inconsistent_overlapping_covers_are_rejected() {
        let (mw, grid) = cantor_setup(3.0f64.powi(-4));
        let k = solve_invariant_list(&mw, 3.0f64.powi(-4), 64).unwrap();
        let class = classify_disconnected(&mw, &k, 2).unwrap();
        // Two copies of the full covering carrying different assignments.
        let cert = ConjugacyCertificate {
            f: MapDescriptor::Affine(vec![AffinePair::identity(1)]),
            cover: vec![grid.sets().to_vec(), grid.sets().to_vec()],
            sigmas: vec![vec![EdgeId(0), EdgeId(1)], vec![EdgeId(1), EdgeId(0)]],
        };
        match permutation_field(&cert, &grid, &class) {
            Err(CorrError::InconsistentOverlap {
                first: 0,
                second: 1,
            }) => {}
            other => panic!("expected an overlap defect, got {other:?}"),
        }
    }

    #[test]
    fn cover_gaps_error_in_build_and_flag_in_refutation() {
        let (mw, grid) = cantor_setup(3.0f64.powi(-4));
        // Keep only the left half of the covering cells.
        let mut piece = TaggedBoxSet::empty(
            grid.sets()[0].vertex(),
            grid.sets()[0].ambient().clone(),
            grid.resolution(),
        )
        .unwrap();
        for (j, x) in grid.samples(0).iter().enumerate() {
            if x[0] < 0.5 {
                piece.insert_cell(grid.cell_at(0, j));
            }
        }
        let cert = ConjugacyCertificate {
            f: MapDescriptor::Affine(vec![AffinePair::identity(1)]),
            cover: vec![vec![piece]],
            sigmas: vec![vec![EdgeId(0), EdgeId(1)]],
        };
        match build_v(&cert, &mw, &mw, &grid, &grid) {
            Err(CorrError::CertificateInvalid(msg)) => assert!(msg.contains("cover gap")),
            other => panic!("expected a cover gap, got {:?}", other.map(|_| ())),
        }
        let report = refute_certificate(&cert, &mw, &mw, &grid, &grid, 1e-9);
        assert!(report.cover_gap);
        assert!(
            report.pass,
            "the identity relation holds on the half that is covered"
        );
    }

    #[test]
    fn non_bijective_map_is_rejected() {
        let (mw, grid) = cantor_setup(3.0f64.powi(-4));
        // f(x) = x/3 lands inside the covering (left third) but collapses
        // the covering onto a third of its cells.
        let squash = AffinePair::from_forward(
            AffineMap::new(DMatrix::from_element(1, 1, 1.0 / 3.0), DVector::zeros(1)).unwrap(),
        )
        .unwrap();
        let cert = ConjugacyCertificate {
            f: MapDescriptor::Affine(vec![squash]),
            ..ConjugacyCertificate::identity(&mw, &grid)
        };
        match build_v(&cert, &mw, &mw, &grid, &grid) {
            Err(CorrError::CertificateInvalid(msg)) => {
                assert!(msg.contains("bijection"), "got message: {msg}")
            }
            other => panic!(
                "expected a bijectivity failure, got {:?}",
                other.map(|_| ())
            ),
        }
    }

    #[test]
    fn straying_map_is_rejected() {
        let (mw, grid) = cantor_setup(3.0f64.powi(-4));
        // f(x) = x/2 + 0.3 sends covering points deep into the middle gap.
        let stray = AffinePair::from_forward(
            AffineMap::new(
                DMatrix::from_element(1, 1, 0.5),
                DVector::from_element(1, 0.3),
            )
            .unwrap(),
        )
        .unwrap();
        let cert = ConjugacyCertificate {
            f: MapDescriptor::Affine(vec![stray]),
            ..ConjugacyCertificate::identity(&mw, &grid)
        };
        match build_v(&cert, &mw, &mw, &grid, &grid) {
            Err(CorrError::CertificateInvalid(msg)) => {
                assert!(msg.contains("outside"), "got message: {msg}")
            }
            other => panic!("expected a stray image, got {:?}", other.map(|_| ())),
        }
    }

    #[test]
    fn edge_permutations_respect_sources_and_ranges() {
        let mw = cantor_thirds();
        let perms = all_edge_permutations(mw.graph());
        assert_eq!(
            perms,
            vec![vec![EdgeId(0), EdgeId(1)], vec![EdgeId(1), EdgeId(0)],]
        );
    }
}
