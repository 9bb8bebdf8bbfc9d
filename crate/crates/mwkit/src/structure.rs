//! Structural classification and finite aperiodicity witnesses.
//!
//! Two questions about a system are answered here with *certificates*, never
//! with bare floating-point verdicts:
//!
//! * Are the sibling edge images `φ_e(K_{r(e)})`, `φ_f(K_{r(f)})` with
//!   `s(e) = s(f)` pairwise disjoint? Positive gaps between outer coverings
//!   certify disjointness; an overlap is only declared when an exact common
//!   point is exhibited (an eventually-periodic coincidence). Touching
//!   coverings that survive the refinement budget yield `Unknown` — the
//!   answer is never guessed from inconclusive numerics.
//!
//! * Around which points can a bump function be placed so that every short
//!   shifted copy of it has support disjoint from the original? The bump
//!   radius is engineered from exact composite-map evaluations so that the
//!   products `x(φ_α(t))·x(t)` vanish identically on the sample grid, not
//!   merely within tolerance.

use thiserror::Error;

use crate::attractor::{solve_invariant_list, AttractorError, InvariantList};
use crate::geometry::{euclid, GeometryError, Point};
use crate::graph::{cycles_up_to, paths_of_length, EdgeId, GraphError, VertexId};
use crate::mw::{apply_edge, composite_map, fixed_point, MWGraph, MwError};

#[derive(Debug, Clone, Error)]
pub enum StructureError {
    /// Every covering point clears the forbidden fixed points by less than
    /// the requested margin; a finer resolution may expose better centers.
    #[error("best clearance {best:.3e} is below the requested margin {margin:.3e}")]
    ResolutionTooCoarse { best: f64, margin: f64 },
    /// No near-maximal sample of the test function stays clear of the short
    /// cycles' fixed points (and of the function's zero set) at this
    /// resolution; retry with a finer invariant list.
    #[error("no admissible bump center near the maximum of the test function")]
    NoQualifyingCenter,
    /// The sampled test function is malformed (wrong shape, negative values,
    /// or not normalized to maximum 1).
    #[error("invalid test function samples: {0}")]
    InvalidFunction(String),
    #[error(transparent)]
    Attractor(#[from] Box<AttractorError>),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Mw(#[from] MwError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Outcome of the sibling-overlap test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Every sibling pair has a certified positive gap.
    Disjoint,
    /// Some sibling pair provably shares a point (witness attached).
    Overlapping,
    /// Refinement budget exhausted with touching-but-unconfirmed pairs.
    Unknown,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Disjoint => write!(f, "disjoint"),
            Verdict::Overlapping => write!(f, "overlapping"),
            Verdict::Unknown => write!(f, "unknown"),
        }
    }
}

/// Measured lower bound on the distance between two sibling images.
#[derive(Debug, Clone)]
pub struct PairGap {
    pub vertex: VertexId,
    pub e: EdgeId,
    pub f: EdgeId,
    /// Separation of the outer coverings: a lower bound on the separation of
    /// the true images. Zero means the coverings touch or overlap.
    pub gap: f64,
}

#[derive(Debug, Clone)]
pub struct DisconnectednessReport {
    pub verdict: Verdict,
    /// One row per unordered sibling pair `(e, f)`, `e < f`, `s(e) = s(f)`.
    pub gaps: Vec<PairGap>,
    /// An exact common point of two sibling images, when one was confirmed.
    pub witness: Option<(VertexId, Point)>,
    /// Finest grid resolution consulted.
    pub resolution: f64,
}

/// Prefix depth and cycle length searched for exact coincidences.
const PERIODIC_PREFIX_DEPTH: usize = 3;
const PERIODIC_CYCLE_LEN: usize = 3;

/// Exactly representable points of `K_u`: fixed points of short cycles,
/// pushed through short paths into `u`. These are the points for which an
/// overlap can be confirmed in exact-arithmetic terms rather than guessed
/// from touching coverings.
fn periodic_points(mw: &MWGraph, u: VertexId) -> Vec<Point> {
    let g = mw.graph();
    let mut pts: Vec<Point> = Vec::new();
    for cycle in cycles_up_to(g, u, PERIODIC_CYCLE_LEN) {
        pts.push(fixed_point(mw, &cycle).expect("cycles have fixed points"));
    }
    for k in 1..=PERIODIC_PREFIX_DEPTH {
        for beta in paths_of_length(g, u, k) {
            let comp = composite_map(mw, &beta);
            for cycle in cycles_up_to(g, beta.range(), PERIODIC_CYCLE_LEN) {
                let fix = fixed_point(mw, &cycle).expect("cycles have fixed points");
                pts.push(comp.apply(&fix));
            }
        }
    }
    // Dedup on a fine grid so the pair scan below stays small.
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup_by(|a, b| euclid(a, b) <= 1e-13);
    pts
}

/// Looks for an exact common point of `φ_e(K_{r(e)})` and `φ_f(K_{r(f)})`
/// among images of eventually-periodic points.
fn confirm_overlap(mw: &MWGraph, e: EdgeId, f: EdgeId) -> Option<Point> {
    let g = mw.graph();
    let tol = 1e-12 * (1.0 + mw.max_ambient_diameter());
    let ps = periodic_points(mw, g.range(e));
    let qs = periodic_points(mw, g.range(f));
    for p in &ps {
        let fp = mw.map_of(e).apply(p);
        for q in &qs {
            let fq = mw.map_of(f).apply(q);
            if euclid(&fp, &fq) <= tol {
                return Some(fp);
            }
        }
    }
    None
}

/// Tests whether all sibling images are pairwise disjoint.
///
/// Gap measurement runs on the given invariant list first and re-solves at
/// halved resolutions (up to `max_refinements` times) for pairs whose
/// coverings still touch. A touching pair is upgraded to a confirmed overlap
/// only by an exact witness point; otherwise it keeps the verdict honest as
/// `Unknown`.
pub fn classify_disconnected(
    mw: &MWGraph,
    k: &InvariantList,
    max_refinements: usize,
) -> Result<DisconnectednessReport, StructureError> {
    let g = mw.graph();
    let mut pairs: Vec<PairGap> = Vec::new();
    for &v in g.vertices() {
        let out = g.outgoing(v);
        for i in 0..out.len() {
            for j in (i + 1)..out.len() {
                pairs.push(PairGap {
                    vertex: v,
                    e: out[i],
                    f: out[j],
                    gap: 0.0,
                });
            }
        }
    }

    let measure = |k: &InvariantList, pair: &PairGap| -> Result<f64, StructureError> {
        let a = apply_edge(mw, pair.e, k.set_for(g.range(pair.e)).unwrap())?;
        let b = apply_edge(mw, pair.f, k.set_for(g.range(pair.f)).unwrap())?;
        Ok(crate::geometry::min_separation(&a, &b)?)
    };

    let mut resolution = k.resolution();
    for pair in pairs.iter_mut() {
        pair.gap = measure(k, pair)?;
    }

    // Exact confirmation for touching pairs; first hit wins deterministically.
    let mut witness = None;
    for pair in pairs.iter().filter(|p| p.gap <= 0.0) {
        if let Some(w) = confirm_overlap(mw, pair.e, pair.f) {
            witness = Some((pair.vertex, w));
            break;
        }
    }

    if witness.is_none() {
        let mut level = k.clone();
        for _ in 0..max_refinements {
            if pairs.iter().all(|p| p.gap > 0.0) {
                break;
            }
            let h = level.resolution() / 2.0;
            level = solve_invariant_list(mw, h, 256).map_err(Box::new)?;
            resolution = h;
            for pair in pairs.iter_mut() {
                if pair.gap <= 0.0 {
                    pair.gap = measure(&level, pair)?;
                }
            }
        }
    }

    let verdict = if witness.is_some() {
        Verdict::Overlapping
    } else if pairs.iter().all(|p| p.gap > 0.0) {
        Verdict::Disjoint
    } else {
        Verdict::Unknown
    };
    Ok(DisconnectednessReport {
        verdict,
        gaps: pairs,
        witness,
        resolution,
    })
}

/// A covering point staying clear of all short-cycle fixed points.
#[derive(Debug, Clone)]
pub struct UnfixedPoint {
    pub vertex: VertexId,
    pub point: Point,
    /// Realized minimum distance to the forbidden fixed points (infinite
    /// when no cycle of the considered length passes through the vertex).
    pub clearance: f64,
}

/// Finds the covering cell center farthest from every fixed point of every
/// cycle of length ≤ `n0` based at its vertex. Such centers exist at fine
/// enough resolutions because the invariant sets have no isolated points
/// while the forbidden fixed points are finitely many.
pub fn find_unfixed_point(
    mw: &MWGraph,
    k: &InvariantList,
    n0: usize,
    margin: f64,
) -> Result<UnfixedPoint, StructureError> {
    assert!(n0 >= 1, "cycle horizon must be at least 1");
    let g = mw.graph();
    let mut best: Option<UnfixedPoint> = None;
    for (i, &v) in g.vertices().iter().enumerate() {
        let fps: Vec<Point> = cycles_up_to(g, v, n0)
            .iter()
            .map(|c| fixed_point(mw, c).expect("cycles have fixed points"))
            .collect();
        for center in k.sets()[i].centers() {
            let clearance = fps
                .iter()
                .map(|fp| euclid(&center, fp))
                .fold(f64::INFINITY, f64::min);
            if best.as_ref().is_none_or(|b| clearance > b.clearance) {
                best = Some(UnfixedPoint {
                    vertex: v,
                    point: center,
                    clearance,
                });
            }
        }
    }
    let best = best.expect("invariant lists are nonempty");
    if best.clearance < margin {
        return Err(StructureError::ResolutionTooCoarse {
            best: best.clearance,
            margin,
        });
    }
    Ok(best)
}

/// A piecewise-linear radial hat: 1 at the center, 0 at distance ≥ radius,
/// and 0 on every other vertex's space.
#[derive(Debug, Clone)]
pub struct Bump {
    pub vertex: VertexId,
    pub center: Point,
    pub radius: f64,
}

impl Bump {
    pub fn eval(&self, vertex: VertexId, p: &[f64]) -> f64 {
        if vertex != self.vertex {
            return 0.0;
        }
        (1.0 - euclid(p, &self.center) / self.radius).max(0.0)
    }
}

/// What the witness construction verified, by exhaustive scan over the
/// sample grid.
#[derive(Debug, Clone)]
pub struct WitnessReport {
    /// Best sandwiched value `max_t x(t)²·a₀(t)`; must exceed 1 − ε.
    pub sup_sandwich: f64,
    /// Largest product `x(φ_α(t))·x(t)` over all paths α of length ≤ n₀ and
    /// all samples t; disjoint supports make this exactly zero.
    pub max_shift_product: f64,
    /// Number of paths α scanned.
    pub paths_checked: usize,
    /// Half the minimal displacement of the center under short cycles.
    pub delta1: f64,
    /// Conservative distance from the center to the zero set of a₀.
    pub delta2: f64,
    /// Minimal displacement `|φ_α(t₀) − t₀|` realized over short cycles
    /// (must be ≥ 2·delta1).
    pub min_ball_separation: f64,
    /// Distance from the center to the nearest forbidden fixed point.
    pub clearance: f64,
}

/// Builds a bump `x` certifying that no short shift of the system fixes the
/// neighborhood of a point where `a₀` is near-maximal: `x·a₀·x` stays above
/// 1 − ε while every shifted product `x(φ_α(t))·x(t)` vanishes identically.
///
/// `a0` holds nonnegative samples of the test function on the covering cell
/// centers, one inner vector per vertex in graph order, normalized so that
/// its maximum is 1.
pub fn aperiodicity_witness(
    mw: &MWGraph,
    k: &InvariantList,
    a0: &[Vec<f64>],
    n0: usize,
    eps: f64,
) -> Result<(Bump, WitnessReport), StructureError> {
    assert!(n0 >= 1, "cycle horizon must be at least 1");
    assert!(eps > 0.0, "tolerance must be positive");
    let g = mw.graph();

    // Validate the sampled function: shape, sign, normalization.
    if a0.len() != g.vertices().len() {
        return Err(StructureError::InvalidFunction(format!(
            "expected {} per-vertex sample vectors, got {}",
            g.vertices().len(),
            a0.len()
        )));
    }
    let mut max_val = f64::NEG_INFINITY;
    for (i, vals) in a0.iter().enumerate() {
        if vals.len() != k.sets()[i].len() {
            return Err(StructureError::InvalidFunction(format!(
                "vertex {} has {} covering cells but {} samples",
                g.vertices()[i],
                k.sets()[i].len(),
                vals.len()
            )));
        }
        for &x in vals {
            if x.is_nan() || x < -1e-12 {
                return Err(StructureError::InvalidFunction(
                    "samples must be nonnegative".into(),
                ));
            }
            max_val = max_val.max(x);
        }
    }
    if (max_val - 1.0).abs() > 1e-9 {
        return Err(StructureError::InvalidFunction(format!(
            "samples must be normalized to maximum 1 (got {max_val})"
        )));
    }

    let cell_diam = k.sets()[0].cell_diameter();

    // Candidate centers: samples where a₀ is within ε of its maximum, ranked
    // by clearance from the forbidden fixed points. The margin of one cell
    // diameter keeps the bump radius bounded away from float noise: the
    // shifted supports then miss each other by at least (1−c)·δ₁.
    struct Candidate {
        vertex_idx: usize,
        center: Point,
        clearance: f64,
    }
    let mut candidates: Vec<Candidate> = Vec::new();
    for (i, &v) in g.vertices().iter().enumerate() {
        let fps: Vec<Point> = cycles_up_to(g, v, n0)
            .iter()
            .map(|c| fixed_point(mw, c).expect("cycles have fixed points"))
            .collect();
        for (center, &value) in k.sets()[i].centers().into_iter().zip(&a0[i]) {
            if value > 1.0 - eps {
                let clearance = fps
                    .iter()
                    .map(|fp| euclid(&center, fp))
                    .fold(f64::INFINITY, f64::min);
                candidates.push(Candidate {
                    vertex_idx: i,
                    center,
                    clearance,
                });
            }
        }
    }
    candidates.sort_by(|a, b| b.clearance.partial_cmp(&a.clearance).unwrap());

    let mut chosen: Option<(Candidate, f64, f64)> = None;
    for cand in candidates {
        if cand.clearance < cell_diam {
            break; // sorted descending: nothing below qualifies either
        }
        let v = g.vertices()[cand.vertex_idx];
        // δ₁: half the minimal displacement of the center under any cycle of
        // length ≤ n₀, capped by the ambient diameter so that a vertex with
        // no short cycles still gets a finite radius.
        let mut min_disp = f64::INFINITY;
        for cycle in cycles_up_to(g, v, n0) {
            let moved = composite_map(mw, &cycle).apply(&cand.center);
            min_disp = min_disp.min(euclid(&moved, &cand.center));
        }
        let delta1 = (min_disp / 2.0).min(mw.ambient_of(v).diameter());
        // δ₂: conservative distance to the sampled zero set of a₀ at this
        // vertex, shrunk by half a cell because the true zero could sit
        // anywhere inside a zero sample's cell.
        let zero_dist = k.sets()[cand.vertex_idx]
            .centers()
            .into_iter()
            .zip(&a0[cand.vertex_idx])
            .filter(|(_, &val)| val <= 1e-12)
            .map(|(t, _)| euclid(&t, &cand.center))
            .fold(f64::INFINITY, f64::min);
        let delta2 = if zero_dist.is_finite() {
            zero_dist - cell_diam / 2.0
        } else {
            delta1
        };
        if delta2 > 0.0 {
            chosen = Some((cand, delta1, delta2));
            break;
        }
    }
    let (cand, delta1, delta2) = chosen.ok_or(StructureError::NoQualifyingCenter)?;
    let v0 = g.vertices()[cand.vertex_idx];
    let bump = Bump {
        vertex: v0,
        center: cand.center.clone(),
        radius: delta1.min(delta2),
    };

    // Certify (i): the sandwiched value at the center alone reaches a₀(t₀).
    let mut sup_sandwich = 0.0f64;
    for (i, &v) in g.vertices().iter().enumerate() {
        for (t, &val) in k.sets()[i].centers().into_iter().zip(&a0[i]) {
            let x = bump.eval(v, &t);
            sup_sandwich = sup_sandwich.max(x * x * val);
        }
    }

    // Certify (ii): exhaustive scan of x(φ_α(t))·x(t) over every path of
    // length ≤ n₀ and every sample. Disjoint supports must give exact zeros.
    let mut max_shift_product = 0.0f64;
    let mut min_ball_separation = f64::INFINITY;
    let mut paths_checked = 0usize;
    for len in 1..=n0 {
        for &v in g.vertices() {
            for alpha in paths_of_length(g, v, len) {
                paths_checked += 1;
                let comp = composite_map(mw, &alpha);
                if alpha.source() == v0 && alpha.range() == v0 {
                    min_ball_separation =
                        min_ball_separation.min(euclid(&comp.apply(&bump.center), &bump.center));
                }
                let i = g.vertex_index(alpha.range()).unwrap();
                for t in k.sets()[i].centers() {
                    let prod =
                        bump.eval(alpha.source(), &comp.apply(&t)) * bump.eval(alpha.range(), &t);
                    max_shift_product = max_shift_product.max(prod);
                }
            }
        }
    }

    let report = WitnessReport {
        sup_sandwich,
        max_shift_product,
        paths_checked,
        delta1,
        delta2,
        min_ball_separation,
        clearance: cand.clearance,
    };
    Ok((bump, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::attractor::tests::{cantor_thirds, sierpinski_right, tent_pair};

    #[test]
    fn cantor_siblings_are_certified_disjoint() {
        let mw = cantor_thirds();
        let k = solve_invariant_list(&mw, 3.0f64.powi(-6), 64).unwrap();
        let rep = classify_disconnected(&mw, &k, 2).unwrap();
        assert_eq!(rep.verdict, Verdict::Disjoint);
        assert!(rep.witness.is_none());
        assert_eq!(rep.gaps.len(), 1);
        // The images cover [0,1/3] and [2/3,1]; the measured covering gap is
        // the full middle third.
        assert!((rep.gaps[0].gap - 1.0 / 3.0).abs() <= 1e-12);
    }

    #[test]
    fn disjoint_verdicts_survive_refinement() {
        let mw = cantor_thirds();
        let coarse = solve_invariant_list(&mw, 3.0f64.powi(-3), 64).unwrap();
        assert_eq!(
            classify_disconnected(&mw, &coarse, 0).unwrap().verdict,
            Verdict::Disjoint
        );
        let fine = solve_invariant_list(&mw, 3.0f64.powi(-5), 64).unwrap();
        let rep = classify_disconnected(&mw, &fine, 0).unwrap();
        assert_eq!(rep.verdict, Verdict::Disjoint);
        assert!(rep.gaps[0].gap > 0.0);
    }

    #[test]
    fn tent_overlap_is_confirmed_with_an_exact_witness() {
        let mw = tent_pair();
        let k = solve_invariant_list(&mw, 2.0f64.powi(-8), 64).unwrap();
        let rep = classify_disconnected(&mw, &k, 2).unwrap();
        assert_eq!(rep.verdict, Verdict::Overlapping);
        let (v, w) = rep.witness.unwrap();
        assert_eq!(v, VertexId(0));
        // Both halves of the tent meet at 1/2.
        assert!((w[0] - 0.5).abs() <= 1e-12);
        assert_eq!(rep.gaps[0].gap, 0.0);
    }

    #[test]
    fn gasket_overlap_witness_sits_on_the_shared_corner() {
        let mw = sierpinski_right();
        let k = solve_invariant_list(&mw, 2.0f64.powi(-6), 64).unwrap();
        let rep = classify_disconnected(&mw, &k, 2).unwrap();
        assert_eq!(rep.verdict, Verdict::Overlapping);
        assert_eq!(rep.gaps.len(), 3);
        let (_, w) = rep.witness.unwrap();
        // First pair in scan order is (e0, e1), whose images meet at (1/2, 0).
        assert!(euclid(&w, &[0.5, 0.0]) <= 1e-12);
    }

    #[test]
    fn unfixed_points_avoid_short_cycle_fixed_points() {
        let mw = cantor_thirds();
        let k = solve_invariant_list(&mw, 3.0f64.powi(-6), 64).unwrap();
        let u1 = find_unfixed_point(&mw, &k, 1, 0.1).unwrap();
        // Length-1 fixed points are 0 and 1.
        let d = u1.point[0].min(1.0 - u1.point[0]);
        assert!((u1.clearance - d).abs() <= 1e-12);
        assert!(u1.clearance >= 2.0 / 9.0);

        let u2 = find_unfixed_point(&mw, &k, 2, 0.05).unwrap();
        // Length ≤ 2 cycles fix {0, 1, 1/4, 3/4}.
        let recomputed = [0.0, 1.0, 0.25, 0.75]
            .iter()
            .map(|fp| (u2.point[0] - fp).abs())
            .fold(f64::INFINITY, f64::min);
        assert!((u2.clearance - recomputed).abs() <= 1e-12);
        assert!(u2.clearance >= 0.05);
    }

    #[test]
    fn unachievable_margin_is_reported() {
        let mw = cantor_thirds();
        let k = solve_invariant_list(&mw, 3.0f64.powi(-4), 64).unwrap();
        match find_unfixed_point(&mw, &k, 1, 2.0) {
            Err(StructureError::ResolutionTooCoarse { best, margin }) => {
                assert!(best < margin);
            }
            other => panic!("expected ResolutionTooCoarse, got {other:?}"),
        }
    }

    fn constant_one(k: &InvariantList) -> Vec<Vec<f64>> {
        k.sets().iter().map(|s| vec![1.0; s.len()]).collect()
    }

    #[test]
    fn witness_products_vanish_identically() {
        let mw = cantor_thirds();
        let k = solve_invariant_list(&mw, 3.0f64.powi(-6), 64).unwrap();
        for n0 in [1usize, 2] {
            let (bump, rep) = aperiodicity_witness(&mw, &k, &constant_one(&k), n0, 0.1).unwrap();
            assert!(rep.sup_sandwich > 0.9);
            assert_eq!(rep.max_shift_product, 0.0, "n0 = {n0}");
            assert!(rep.min_ball_separation >= 2.0 * rep.delta1 - 1e-12);
            assert_eq!(rep.delta2, rep.delta1, "no zero set when a0 ≡ 1");
            assert!(bump.radius > 0.0);
            assert_eq!(
                rep.paths_checked,
                (1..=n0).map(|k| 1usize << k).sum::<usize>()
            );
        }
    }

    #[test]
    fn witness_construction_tolerates_overlapping_systems() {
        let mw = tent_pair();
        let k = solve_invariant_list(&mw, 2.0f64.powi(-8), 64).unwrap();
        let (bump, rep) = aperiodicity_witness(&mw, &k, &constant_one(&k), 1, 0.1).unwrap();
        assert_eq!(rep.max_shift_product, 0.0);
        assert!(rep.sup_sandwich > 0.9);
        assert!(bump.radius > 0.0);
    }

    #[test]
    fn zero_sets_shrink_the_bump() {
        let mw = cantor_thirds();
        let k = solve_invariant_list(&mw, 3.0f64.powi(-5), 64).unwrap();
        // Support only on [0, 1/4]: the best center hugs the cutoff, so the
        // zero set sits much closer than the cycle displacements and the
        // radius must come from the zero-set rule.
        let centers = k.sets()[0].centers();
        let a0: Vec<Vec<f64>> = vec![centers
            .iter()
            .map(|t| if t[0] <= 0.25 { 1.0 } else { 0.0 })
            .collect()];
        let (bump, rep) = aperiodicity_witness(&mw, &k, &a0, 1, 0.1).unwrap();
        assert!(rep.delta2 < rep.delta1);
        assert_eq!(bump.radius, rep.delta2);
        for (t, &val) in centers.iter().zip(&a0[0]) {
            if val == 0.0 {
                assert_eq!(bump.eval(VertexId(0), t), 0.0);
            }
        }
    }

    #[test]
    fn concentrated_function_near_a_fixed_point_has_no_center() {
        let mw = cantor_thirds();
        let k = solve_invariant_list(&mw, 3.0f64.powi(-2), 64).unwrap();
        // Supported only on the first covering cell, which hugs the fixed
        // point 0 at this coarse resolution.
        let mut a0 = vec![vec![0.0; k.sets()[0].len()]];
        a0[0][0] = 1.0;
        match aperiodicity_witness(&mw, &k, &a0, 1, 0.1) {
            Err(StructureError::NoQualifyingCenter) => {}
            other => panic!("expected NoQualifyingCenter, got {other:?}"),
        }
    }
}
