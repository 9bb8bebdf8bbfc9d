//! Symbolic dynamics on the edge-path space: cylinders, the coding map, and
//! inverse coding (addresses).
//!
//! A finite path α = (α₁,…,α_n) names the cylinder `K_α = φ_{α₁}∘⋯∘φ_{α_n}
//! (K_{r(α_n)})`; an infinite path names the single point in the nested
//! intersection of its cylinders. Everything here is evaluated through
//! interval arithmetic on cylinder images — never by pushing an arbitrary
//! point through a forward orbit — so every answer carries a certified
//! diameter bound.
//!
//! Inverse coding returns *all* matching prefixes. Uniqueness of addresses is
//! a property of totally disconnected systems, not of the operation: at an
//! overlap point two cylinders legitimately contain the same point.

use thiserror::Error;

use crate::attractor::InvariantList;
use crate::geometry::{euclid, point_to_set, GeometryError, Point, TaggedBoxSet};
use crate::graph::{EdgeId, FinitePath, GraphError, PathPrefix, VertexId};
use crate::mw::{composite_map, global_ratio, MWGraph};

#[derive(Debug, Clone, Error)]
pub enum SymbolicError {
    /// The prefix cannot pin the coded point down to the requested accuracy;
    /// `required` is the depth at which the global ratio guarantees it can.
    #[error("prefix too short for requested accuracy; depth {required} suffices")]
    PrefixTooShort { required: usize },
    /// The edge does not chain onto the front of the path.
    #[error("edge {edge} has range {want} but the path starts at {got}")]
    ChainMismatch {
        edge: EdgeId,
        want: VertexId,
        got: VertexId,
    },
    /// The queried point is farther than the allowed slack from every
    /// cylinder at the requested depth.
    #[error("point is not on the invariant set (within the given slack)")]
    PointNotOnAttractor,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// A cylinder set: the image of one invariant-set covering under the path's
/// composite map, together with a certified bound on its true diameter.
#[derive(Debug, Clone)]
pub struct CylinderBox {
    pub path: FinitePath,
    /// Outer covering of `φ_α(K_{r(α)})` on the grid of the start vertex.
    pub image: TaggedBoxSet,
    /// Upper bound on the diameter of the true cylinder set.
    pub diameter_bound: f64,
}

impl CylinderBox {
    /// Center of the covering's bounding box; within half the covering
    /// diameter of every point of the cylinder.
    pub fn center(&self) -> Result<Point, GeometryError> {
        Ok(self.image.bounding_box()?.center())
    }
}

/// Images the covering of `K_{r(α)}` through the composite map of `α`, cell
/// box by cell box, onto the grid of `s(α)` at the covering's resolution.
///
/// Applying the composite in one shot (rather than edge by edge) keeps the
/// result within one cell of the true cylinder instead of accumulating a
/// cell of bleed per level.
pub fn cylinder(
    mw: &MWGraph,
    k: &InvariantList,
    alpha: &FinitePath,
) -> Result<CylinderBox, SymbolicError> {
    let comp = composite_map(mw, alpha);
    let base = k
        .set_for(alpha.range())
        .expect("invariant list covers every vertex");
    let mut image = TaggedBoxSet::empty(
        alpha.source(),
        mw.ambient_of(alpha.source()).clone(),
        k.resolution(),
    )?;
    for c in base.cells() {
        let b = comp.apply_aabb(&base.cell_box(c));
        image.insert_region(b.lo(), b.hi());
    }
    let diameter_bound = comp.c_hi() * base.bounding_box()?.diameter();
    Ok(CylinderBox {
        path: alpha.clone(),
        image,
        diameter_bound,
    })
}

/// Evaluates the coding map at a path prefix: the center of the deepest
/// cylinder, valid whenever the prefix already pins the cylinder down to
/// diameter ≤ `eps`.
///
/// The center is taken from the exact interval image of the base covering's
/// bounding box, not from the grid-snapped cylinder covering: the snap would
/// cost a cell diameter of accuracy, while the interval image costs nothing,
/// so the result lands within `eps` of the point coded by any infinite
/// extension of the prefix (comfortably inside the `eps` + one cell
/// contract).
pub fn coding_map(
    mw: &MWGraph,
    k: &InvariantList,
    alpha: &PathPrefix,
    eps: f64,
) -> Result<Point, SymbolicError> {
    let d = mw.max_ambient_diameter();
    let product: f64 = alpha.edges().iter().map(|&e| mw.map_of(e).c_hi()).product();
    if product * d > eps {
        let (_, c) = global_ratio(mw);
        let required = ((eps / d).ln() / c.ln()).ceil().max(1.0) as usize;
        return Err(SymbolicError::PrefixTooShort { required });
    }
    let comp = composite_map(mw, alpha);
    let base = k
        .set_for(alpha.range())
        .expect("invariant list covers every vertex");
    Ok(comp.apply_aabb(&base.bounding_box()?).center())
}

/// Measures `|π(eα) − φ_e(π(α))|`, both sides evaluated through prefixes at
/// accuracy `eps`. The coding map intertwines the edge shift with the edge
/// map, so this must come out ≤ 2·(eps + cell diameter).
pub fn intertwine_residual(
    mw: &MWGraph,
    k: &InvariantList,
    e: EdgeId,
    alpha: &PathPrefix,
    eps: f64,
) -> Result<f64, SymbolicError> {
    let g = mw.graph();
    let extended = alpha
        .prepend(g, e)
        .map_err(|_| SymbolicError::ChainMismatch {
            edge: e,
            want: g.range(e),
            got: alpha.source(),
        })?;
    let lhs = coding_map(mw, k, &extended, eps)?;
    let rhs = mw.map_of(e).apply(&coding_map(mw, k, alpha, eps)?);
    Ok(euclid(&lhs, &rhs))
}

/// Finds every depth-`n` path starting at `v` whose cylinder passes within
/// `slack` of the point. Descends the path tree, pruning a branch as soon as
/// the point is provably farther than `slack` from everything below it.
pub fn address_of(
    mw: &MWGraph,
    k: &InvariantList,
    v: VertexId,
    x: &[f64],
    depth: usize,
    slack: f64,
) -> Result<Vec<FinitePath>, SymbolicError> {
    let g = mw.graph();
    let set = k.set_for(v).expect("invariant list covers every vertex");
    if point_to_set(x, set)? > slack {
        return Err(SymbolicError::PointNotOnAttractor);
    }
    let cell_diam = set.cell_diameter();

    // Partial paths survive while the bounding box of their cylinder covering
    // passes within slack of x; extensions only shrink cylinders, so a miss
    // by more than slack + one cell is final.
    let mut alive: Vec<Vec<EdgeId>> = g.outgoing(v).iter().map(|&e| vec![e]).collect();
    for level in 1..=depth {
        let mut next = Vec::new();
        for edges in alive {
            let path = FinitePath::new(g, edges.clone())?;
            let comp = composite_map(mw, &path);
            let base = k.set_for(path.range()).unwrap();
            let bbox = comp.apply_aabb(&base.bounding_box()?);
            if bbox.distance_to_point(x) > slack + cell_diam {
                continue;
            }
            if level == depth {
                next.push(edges);
            } else {
                for &e in g.outgoing(path.range()) {
                    let mut longer = edges.clone();
                    longer.push(e);
                    next.push(longer);
                }
            }
        }
        alive = next;
    }

    let mut out = Vec::new();
    for edges in alive {
        let path = FinitePath::new(g, edges)?;
        let cyl = cylinder(mw, k, &path)?;
        if point_to_set(x, &cyl.image)? <= slack {
            out.push(path);
        }
    }
    if out.is_empty() {
        return Err(SymbolicError::PointNotOnAttractor);
    }
    out.sort_by(|a, b| a.edges().cmp(b.edges()));
    Ok(out)
}
