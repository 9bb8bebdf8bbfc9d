//! Contractive affine edge maps and the validated graph-directed system.
//!
//! Every edge `e` of the underlying graph carries an injective affine
//! contraction `φ_e : T_{r(e)} → T_{s(e)}` between the ambient boxes of its
//! endpoint vertices, with certified two-sided bounds
//! `c_lo·|x−y| ≤ |φ_e(x)−φ_e(y)| ≤ c_hi·|x−y|`, `0 < c_lo ≤ c_hi < 1`,
//! computed from the extreme singular values of the linear part.

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

use crate::geometry::{Aabb, Point, TaggedBoxSet};
use crate::graph::{
    validate_graph, DirectedGraph, EdgeId, FinitePath, GraphError, GraphIssue, VertexId,
};

/// An arbitrary affine map `x ↦ Ax + b` (no contraction constraint); used for
/// composites, inverses, and certificate transport maps.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineMap {
    matrix: DMatrix<f64>,
    offset: DVector<f64>,
}

impl AffineMap {
    pub fn new(matrix: DMatrix<f64>, offset: DVector<f64>) -> Result<Self, MwError> {
        if !matrix.is_square() || matrix.nrows() != offset.len() {
            return Err(MwError::ShapeMismatch {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
                offset: offset.len(),
            });
        }
        if matrix.nrows() == 0 || matrix.nrows() > 3 {
            return Err(MwError::BadDimension(matrix.nrows()));
        }
        Ok(AffineMap { matrix, offset })
    }

    pub fn identity(dim: usize) -> Self {
        AffineMap {
            matrix: DMatrix::identity(dim, dim),
            offset: DVector::zeros(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.offset.len()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn offset(&self) -> &DVector<f64> {
        &self.offset
    }

    pub fn apply(&self, p: &[f64]) -> Point {
        debug_assert_eq!(p.len(), self.dim());
        let d = self.dim();
        let mut out = vec![0.0; d];
        for (i, out_i) in out.iter_mut().enumerate() {
            let mut acc = self.offset[i];
            for (j, &pj) in p.iter().enumerate() {
                acc += self.matrix[(i, j)] * pj;
            }
            *out_i = acc;
        }
        out
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &AffineMap) -> AffineMap {
        AffineMap {
            matrix: &self.matrix * &inner.matrix,
            offset: &self.matrix * &inner.offset + &self.offset,
        }
    }

    /// Exact axis-aligned bounding box of the image of a box: each output
    /// coordinate is affine, so its range over the box is attained entrywise.
    pub fn apply_aabb(&self, b: &Aabb) -> Aabb {
        let d = self.dim();
        let mut lo = vec![0.0; d];
        let mut hi = vec![0.0; d];
        for i in 0..d {
            let mut acc_lo = self.offset[i];
            let mut acc_hi = self.offset[i];
            for j in 0..d {
                let a = self.matrix[(i, j)];
                let (x, y) = (a * b.lo()[j], a * b.hi()[j]);
                acc_lo += x.min(y);
                acc_hi += x.max(y);
            }
            lo[i] = acc_lo;
            hi[i] = acc_hi;
        }
        Aabb::new(lo, hi).expect("image of a box is a box")
    }

    /// Inverse map, when the linear part is invertible.
    pub fn inverse(&self) -> Option<AffineMap> {
        let inv = self.matrix.clone().try_inverse()?;
        let offset = -(&inv * &self.offset);
        Some(AffineMap {
            matrix: inv,
            offset,
        })
    }

    /// Largest and smallest singular values of the linear part.
    pub fn singular_bounds(&self) -> (f64, f64) {
        let svd = self.matrix.clone().svd(false, false);
        let sv = &svd.singular_values;
        let mut lo = f64::INFINITY;
        let mut hi: f64 = 0.0;
        for s in sv.iter() {
            lo = lo.min(*s);
            hi = hi.max(*s);
        }
        (lo, hi)
    }
}

/// An injective affine contraction with certified two-sided ratio bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineContraction {
    map: AffineMap,
    c_lo: f64,
    c_hi: f64,
}

impl AffineContraction {
    /// Computes the singular-value bounds and enforces `0 < c_lo ≤ c_hi < 1`.
    pub fn new(matrix: DMatrix<f64>, offset: DVector<f64>) -> Result<Self, MwError> {
        let map = AffineMap::new(matrix, offset)?;
        let (c_lo, c_hi) = map.singular_bounds();
        if c_lo.is_nan() || c_lo <= 0.0 {
            return Err(MwError::NotInjective { c_lo });
        }
        if c_hi.is_nan() || c_hi >= 1.0 {
            return Err(MwError::NotContraction { c_hi });
        }
        Ok(AffineContraction { map, c_lo, c_hi })
    }

    pub fn dim(&self) -> usize {
        self.map.dim()
    }

    /// Certified lower ratio bound (smallest singular value).
    pub fn c_lo(&self) -> f64 {
        self.c_lo
    }

    /// Certified upper ratio bound (largest singular value).
    pub fn c_hi(&self) -> f64 {
        self.c_hi
    }

    pub fn as_map(&self) -> &AffineMap {
        &self.map
    }

    pub fn apply(&self, p: &[f64]) -> Point {
        self.map.apply(p)
    }

    pub fn apply_aabb(&self, b: &Aabb) -> Aabb {
        self.map.apply_aabb(b)
    }

    /// `self ∘ inner`; the bounds are recomputed from the composite's own
    /// singular values, which is at least as tight as the products.
    pub fn compose(&self, inner: &AffineContraction) -> AffineContraction {
        let map = self.map.compose(&inner.map);
        let (c_lo, c_hi) = map.singular_bounds();
        AffineContraction { map, c_lo, c_hi }
    }
}

/// One defect in a raw system description.
#[derive(Debug, Clone, PartialEq)]
pub enum MwIssue {
    Graph(GraphIssue),
    /// Upper ratio bound reached 1.
    NotContraction {
        edge: EdgeId,
        c_hi: f64,
    },
    /// Linear part is singular.
    NotInjective {
        edge: EdgeId,
    },
    /// `φ_e(T_{r(e)})` is not contained in `T_{s(e)}`.
    RangeEscapesAmbient {
        edge: EdgeId,
    },
    /// Map dimension disagrees with the ambient boxes.
    EdgeDimension {
        edge: EdgeId,
    },
    /// Every vertex needs an ambient box of a common dimension.
    AmbientDimension {
        vertex: VertexId,
    },
}

impl std::fmt::Display for MwIssue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MwIssue::Graph(g) => write!(f, "{g}"),
            MwIssue::NotContraction { edge, c_hi } => {
                write!(f, "{edge} is not a contraction (upper ratio {c_hi})")
            }
            MwIssue::NotInjective { edge } => write!(f, "{edge} has a singular linear part"),
            MwIssue::RangeEscapesAmbient { edge } => {
                write!(
                    f,
                    "{edge} maps its range ambient box outside its source ambient box"
                )
            }
            MwIssue::EdgeDimension { edge } => write!(f, "{edge} has mismatched dimension"),
            MwIssue::AmbientDimension { vertex } => {
                write!(f, "{vertex} has an ambient box of mismatched dimension")
            }
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum MwError {
    #[error("invalid system: {}", issues.iter().map(|i| i.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid { issues: Vec<MwIssue> },
    #[error("matrix is {rows}x{cols} but offset has length {offset}")]
    ShapeMismatch {
        rows: usize,
        cols: usize,
        offset: usize,
    },
    #[error("dimension must be 1..=3, got {0}")]
    BadDimension(usize),
    #[error("upper ratio bound {c_hi} is not < 1")]
    NotContraction { c_hi: f64 },
    #[error("lower ratio bound {c_lo} is not > 0")]
    NotInjective { c_lo: f64 },
    #[error("set is tagged {got} but the edge needs {want}")]
    TagMismatch { want: VertexId, got: VertexId },
    #[error("path is not a cycle (s={s}, r={r})")]
    NotACycle { s: VertexId, r: VertexId },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Raw system description, as parsed from a configuration file.
#[derive(Debug, Clone)]
pub struct RawMwSystem {
    pub graph: crate::graph::RawGraph,
    /// Ambient box per vertex, aligned with `graph.vertices`.
    pub ambient: Vec<Aabb>,
    /// `(matrix, offset)` per edge, aligned with dense edge ids.
    pub maps: Vec<(DMatrix<f64>, DVector<f64>)>,
}

/// A validated graph-directed system of affine contractions.
#[derive(Debug, Clone)]
pub struct MWGraph {
    graph: DirectedGraph,
    /// Ambient box per vertex position.
    ambient: Vec<Aabb>,
    /// Contraction per edge id.
    maps: Vec<AffineContraction>,
}

/// Validates the graph, computes every edge's ratio bounds, and checks that
/// each edge maps the ambient box of its range vertex into the ambient box of
/// its source vertex. All defects are reported together.
pub fn validate_mw(raw: &RawMwSystem) -> Result<MWGraph, MwError> {
    let mut issues = Vec::new();

    let graph = match validate_graph(&raw.graph) {
        Ok(g) => Some(g),
        Err(GraphError::Invalid { issues: gi }) => {
            issues.extend(gi.into_iter().map(MwIssue::Graph));
            None
        }
        Err(_) => unreachable!("validate_graph only fails with Invalid"),
    };

    let dim = raw.ambient.first().map(|a| a.dim()).unwrap_or(0);
    for (i, a) in raw.ambient.iter().enumerate() {
        if a.dim() != dim {
            let v = raw
                .graph
                .vertices
                .get(i)
                .copied()
                .unwrap_or(VertexId(i as u32));
            issues.push(MwIssue::AmbientDimension { vertex: v });
        }
    }

    let mut maps = Vec::with_capacity(raw.maps.len());
    for (i, (m, b)) in raw.maps.iter().enumerate() {
        let edge = EdgeId(i as u32);
        if m.nrows() != dim || m.ncols() != dim || b.len() != dim {
            issues.push(MwIssue::EdgeDimension { edge });
            continue;
        }
        match AffineContraction::new(m.clone(), b.clone()) {
            Ok(c) => maps.push((edge, c)),
            Err(MwError::NotContraction { c_hi }) => {
                issues.push(MwIssue::NotContraction { edge, c_hi })
            }
            Err(MwError::NotInjective { .. }) => issues.push(MwIssue::NotInjective { edge }),
            Err(_) => issues.push(MwIssue::EdgeDimension { edge }),
        }
    }

    // Containment needs resolved endpoints and valid contractions.
    if let Some(g) = &graph {
        if raw.ambient.len() == g.vertices().len() {
            for (edge, c) in &maps {
                let s = g.source(*edge);
                let r = g.range(*edge);
                let (si, ri) = (g.vertex_index(s).unwrap(), g.vertex_index(r).unwrap());
                let image = c.apply_aabb(&raw.ambient[ri]);
                let target = &raw.ambient[si];
                let slack = 1e-12 * (1.0 + target.diameter());
                let inside = (0..dim).all(|i| {
                    image.lo()[i] >= target.lo()[i] - slack
                        && image.hi()[i] <= target.hi()[i] + slack
                });
                if !inside {
                    issues.push(MwIssue::RangeEscapesAmbient { edge: *edge });
                }
            }
        }
    }

    if !issues.is_empty() {
        return Err(MwError::Invalid { issues });
    }
    let graph = graph.expect("graph valid when no issues");
    Ok(MWGraph {
        ambient: raw.ambient.clone(),
        maps: maps.into_iter().map(|(_, c)| c).collect(),
        graph,
    })
}

impl MWGraph {
    pub fn graph(&self) -> &DirectedGraph {
        &self.graph
    }

    pub fn dim(&self) -> usize {
        self.ambient[0].dim()
    }

    pub fn ambient_of(&self, v: VertexId) -> &Aabb {
        &self.ambient[self.graph.vertex_index(v).expect("vertex in graph")]
    }

    pub fn ambient_by_index(&self, i: usize) -> &Aabb {
        &self.ambient[i]
    }

    pub fn map_of(&self, e: EdgeId) -> &AffineContraction {
        &self.maps[e.0 as usize]
    }

    /// Largest ambient diameter, the `D` in stopping rules and error bounds.
    pub fn max_ambient_diameter(&self) -> f64 {
        self.ambient.iter().map(Aabb::diameter).fold(0.0, f64::max)
    }
}

/// Global two-sided ratio bounds `(min c_lo, max c_hi)` over all edges.
pub fn global_ratio(mw: &MWGraph) -> (f64, f64) {
    let lo = mw
        .maps
        .iter()
        .map(|m| m.c_lo())
        .fold(f64::INFINITY, f64::min);
    let hi = mw.maps.iter().map(|m| m.c_hi()).fold(0.0f64, f64::max);
    (lo, hi)
}

/// Outer covering of `φ_e(S)` for a covering `S` of (part of) `T_{r(e)}`: the
/// image is tagged `s(e)`, lives on the grid of `s(e)`'s ambient box at the
/// same resolution, and covers the true image of the covered region.
pub fn apply_edge(mw: &MWGraph, e: EdgeId, s: &TaggedBoxSet) -> Result<TaggedBoxSet, MwError> {
    let want = mw.graph.range(e);
    if s.vertex() != want {
        return Err(MwError::TagMismatch {
            want,
            got: s.vertex(),
        });
    }
    let target_vertex = mw.graph.source(e);
    let mut out = TaggedBoxSet::empty(
        target_vertex,
        mw.ambient_of(target_vertex).clone(),
        s.resolution(),
    )
    .expect("resolution already validated");
    let map = mw.map_of(e);
    for c in s.cells() {
        let image = map.apply_aabb(&s.cell_box(c));
        out.insert_region(image.lo(), image.hi());
    }
    Ok(out)
}

/// Image of a single point under an edge map.
pub fn apply_edge_point(mw: &MWGraph, e: EdgeId, p: &[f64]) -> Point {
    mw.map_of(e).apply(p)
}

/// Composite contraction `φ_α = φ_{α₁} ∘ … ∘ φ_{α_k}` along a path (rightmost
/// edge applied first).
pub fn composite_map(mw: &MWGraph, path: &FinitePath) -> AffineContraction {
    let mut acc = mw.map_of(path.edges()[0]).clone();
    for &e in &path.edges()[1..] {
        acc = acc.compose(mw.map_of(e));
    }
    acc
}

/// The unique fixed point of the composite along a cycle, by solving
/// `(I − A)x = b` directly.
pub fn fixed_point(mw: &MWGraph, cycle: &FinitePath) -> Result<Point, MwError> {
    if cycle.source() != cycle.range() {
        return Err(MwError::NotACycle {
            s: cycle.source(),
            r: cycle.range(),
        });
    }
    let comp = composite_map(mw, cycle);
    let d = comp.dim();
    let a = comp.as_map().matrix();
    let b = comp.as_map().offset();
    let system = DMatrix::identity(d, d) - a;
    let sol = system
        .lu()
        .solve(b)
        .expect("I - A is invertible for a strict contraction");
    Ok(sol.iter().copied().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::RawGraph;

    fn mat1(a: f64) -> DMatrix<f64> {
        DMatrix::from_row_slice(1, 1, &[a])
    }

    fn vec1(b: f64) -> DVector<f64> {
        DVector::from_column_slice(&[b])
    }

    /// The middle-thirds pair on [0,1]: x/3 and x/3 + 2/3.
    pub(crate) fn cantor_raw() -> RawMwSystem {
        RawMwSystem {
            graph: RawGraph {
                vertices: vec![VertexId(0)],
                edges: vec![
                    (EdgeId(0), VertexId(0), VertexId(0)),
                    (EdgeId(1), VertexId(0), VertexId(0)),
                ],
            },
            ambient: vec![Aabb::new(vec![0.0], vec![1.0]).unwrap()],
            maps: vec![
                (mat1(1.0 / 3.0), vec1(0.0)),
                (mat1(1.0 / 3.0), vec1(2.0 / 3.0)),
            ],
        }
    }

    #[test]
    fn ratio_bounds_from_singular_values() {
        let c = AffineContraction::new(mat1(1.0 / 3.0), vec1(0.0)).unwrap();
        assert!((c.c_lo() - 1.0 / 3.0).abs() < 1e-15);
        assert!((c.c_hi() - 1.0 / 3.0).abs() < 1e-15);
        // A reflection scaled by 1/2 is still a similarity with ratio 1/2.
        let m = DMatrix::from_row_slice(2, 2, &[-0.5, 0.0, 0.0, 0.5]);
        let c2 = AffineContraction::new(m, DVector::zeros(2)).unwrap();
        assert!((c2.c_lo() - 0.5).abs() < 1e-15);
        assert!((c2.c_hi() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn rejects_non_contraction_and_singular() {
        assert!(matches!(
            AffineContraction::new(mat1(1.0), vec1(0.0)),
            Err(MwError::NotContraction { .. })
        ));
        let m = DMatrix::from_row_slice(2, 2, &[0.5, 0.5, 0.5, 0.5]);
        assert!(matches!(
            AffineContraction::new(m, DVector::zeros(2)),
            Err(MwError::NotInjective { .. })
        ));
    }

    #[test]
    fn validate_collects_issue_list() {
        let mut raw = cantor_raw();
        raw.maps[0].0 = mat1(1.0); // not a contraction
        raw.maps[1].1 = vec1(0.9); // image [0.3, 1.233] escapes [0,1]
        raw.maps[1].0 = mat1(1.0 / 3.0);
        let err = validate_mw(&raw).unwrap_err();
        let MwError::Invalid { issues } = err else {
            panic!("expected Invalid")
        };
        assert!(issues.iter().any(|i| matches!(
            i,
            MwIssue::NotContraction {
                edge: EdgeId(0),
                ..
            }
        )));
        assert!(issues
            .iter()
            .any(|i| matches!(i, MwIssue::RangeEscapesAmbient { edge: EdgeId(1) })));
    }

    #[test]
    fn validate_accepts_cantor_pair() {
        let mw = validate_mw(&cantor_raw()).unwrap();
        let (lo, hi) = global_ratio(&mw);
        assert!((lo - 1.0 / 3.0).abs() < 1e-15);
        assert!((hi - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn apply_aabb_is_exact_with_sign_handling() {
        let m = AffineMap::new(mat1(-0.5), vec1(1.0)).unwrap();
        let b = Aabb::new(vec![0.0], vec![1.0]).unwrap();
        let img = m.apply_aabb(&b);
        assert_eq!(img.lo()[0], 0.5);
        assert_eq!(img.hi()[0], 1.0);
    }

    #[test]
    fn apply_edge_produces_exact_outer_covering() {
        let mw = validate_mw(&cantor_raw()).unwrap();
        let full =
            TaggedBoxSet::full(VertexId(0), mw.ambient_of(VertexId(0)).clone(), 1.0 / 9.0).unwrap();
        let image = apply_edge(&mw, EdgeId(0), &full).unwrap();
        // x/3 maps [0,1] onto [0,1/3]: exactly cells 0,1,2 at h = 1/9.
        let cells: Vec<i64> = image.cells().map(|c| c[0]).collect();
        assert_eq!(cells, vec![0, 1, 2]);
    }

    #[test]
    fn apply_edge_rejects_wrong_tag() {
        let mw = validate_mw(&cantor_raw()).unwrap();
        let wrong =
            TaggedBoxSet::full(VertexId(7), Aabb::new(vec![0.0], vec![1.0]).unwrap(), 0.5).unwrap();
        assert!(matches!(
            apply_edge(&mw, EdgeId(0), &wrong),
            Err(MwError::TagMismatch { .. })
        ));
    }

    #[test]
    fn fixed_points_of_cycles() {
        let mw = validate_mw(&cantor_raw()).unwrap();
        let g = mw.graph().clone();
        let e0 = FinitePath::new(&g, vec![EdgeId(0)]).unwrap();
        let e1 = FinitePath::new(&g, vec![EdgeId(1)]).unwrap();
        assert_eq!(fixed_point(&mw, &e0).unwrap(), vec![0.0]);
        assert!((fixed_point(&mw, &e1).unwrap()[0] - 1.0).abs() < 1e-12);
        // Composite (0,1): x ↦ (x + 2)/9, fixed point 1/4.
        let p = FinitePath::new(&g, vec![EdgeId(0), EdgeId(1)]).unwrap();
        let x = fixed_point(&mw, &p).unwrap();
        assert!((x[0] - 0.25).abs() < 1e-15);
    }

    #[test]
    fn composite_is_right_to_left() {
        let mw = validate_mw(&cantor_raw()).unwrap();
        let g = mw.graph().clone();
        // φ_(0,1) = φ₀ ∘ φ₁: 0 ↦ φ₀(φ₁(0)) = φ₀(2/3) = 2/9.
        let p = FinitePath::new(&g, vec![EdgeId(0), EdgeId(1)]).unwrap();
        let comp = composite_map(&mw, &p);
        let y = comp.apply(&[0.0]);
        assert!((y[0] - 2.0 / 9.0).abs() < 1e-15);
    }
}

#[cfg(test)]
mod contraction_props {
    use super::*;
    use proptest::prelude::*;

    fn arb_contraction() -> impl Strategy<Value = AffineContraction> {
        // Random 2x2 linear parts scaled into contraction range, skipping
        // near-singular draws.
        (
            proptest::array::uniform4(-1.0f64..1.0),
            proptest::array::uniform2(-0.5f64..0.5),
        )
            .prop_filter_map("need injective contraction", |(m, b)| {
                let mat = DMatrix::from_row_slice(2, 2, &m);
                let map = AffineMap::new(mat.clone(), DVector::from_column_slice(&b)).unwrap();
                let (lo, hi) = map.singular_bounds();
                if lo < 1e-3 {
                    return None;
                }
                let scale = 0.8 / hi;
                AffineContraction::new(mat * scale, DVector::from_column_slice(&b)).ok()
            })
    }

    proptest! {
        /// The certified sandwich: c_lo·|x−y| ≤ |φx−φy| ≤ c_hi·|x−y|, with
        /// 1e-12 relative slack.
        #[test]
        fn ratio_sandwich(
            c in arb_contraction(),
            x in proptest::array::uniform2(-1.0f64..1.0),
            y in proptest::array::uniform2(-1.0f64..1.0),
        ) {
            let d = crate::geometry::euclid(&x, &y);
            prop_assume!(d > 1e-9);
            let dx = crate::geometry::euclid(&c.apply(&x), &c.apply(&y));
            let slack = 1e-12 * d;
            prop_assert!(c.c_lo() * d - slack <= dx, "lower bound violated");
            prop_assert!(dx <= c.c_hi() * d + slack, "upper bound violated");
        }

        /// Composite bounds are no looser than the products of the bounds.
        #[test]
        fn composite_bounds_multiply(a in arb_contraction(), b in arb_contraction()) {
            let comp = a.compose(&b);
            prop_assert!(comp.c_hi() <= a.c_hi() * b.c_hi() + 1e-12);
            prop_assert!(comp.c_lo() >= a.c_lo() * b.c_lo() - 1e-12);
        }
    }
}
