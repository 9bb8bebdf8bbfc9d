//! Axis-aligned geometry in dimension 1..=3: boxes, tagged grid coverings,
//! point clouds, and the distances between them.
//!
//! A [`TaggedBoxSet`] is the workhorse: a finite union of closed grid cells at
//! resolution `h`, anchored at the lower corner of the ambient box of the
//! vertex it is tagged with. Coverings produced by the rest of the crate are
//! *outer* approximations, so the membership rule for rasterizing a box is
//! deliberately exact: a cell is kept iff its interior meets the box, with a
//! `1e-9·h` snap guard so that boundaries that land on gridlines (up to float
//! noise) are treated as exact. Interior-rule coverings of a full-dimensional
//! box still cover it, and they do not bleed across gridlines, which keeps
//! coverings of self-similar sets exactly aligned with their address
//! structure.

mod distance;

pub use distance::{hausdorff_distance, hausdorff_distance_clouds, min_separation, point_to_set};

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::VertexId;

/// A point in R^d, d = len() ≤ 3.
pub type Point = Vec<f64>;

/// Integer grid-cell index; axes past the set's dimension stay 0.
pub type Cell = [i64; 3];

/// Relative width of the boundary snap band, in units of `h`.
pub(crate) const SNAP_REL: f64 = 1e-9;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum GeometryError {
    #[error("sets are tagged with different vertices ({0} vs {1})")]
    TagMismatch(VertexId, VertexId),
    #[error("dimension mismatch ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error("operation undefined on an empty set")]
    EmptySet,
    #[error("resolution must be positive and finite, got {0}")]
    BadResolution(f64),
    #[error("box has lo > hi on axis {0}")]
    InvertedBox(usize),
    #[error("dimension must be 1..=3, got {0}")]
    BadDimension(usize),
}

/// A nonempty closed axis-aligned box `[lo₁,hi₁]×…×[lo_d,hi_d]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Aabb {
    lo: Point,
    hi: Point,
}

impl Aabb {
    pub fn new(lo: Point, hi: Point) -> Result<Self, GeometryError> {
        if lo.len() != hi.len() {
            return Err(GeometryError::DimensionMismatch(lo.len(), hi.len()));
        }
        if lo.is_empty() || lo.len() > 3 {
            return Err(GeometryError::BadDimension(lo.len()));
        }
        for i in 0..lo.len() {
            if lo[i].is_nan() || hi[i].is_nan() || lo[i] > hi[i] {
                return Err(GeometryError::InvertedBox(i));
            }
        }
        Ok(Aabb { lo, hi })
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[f64] {
        &self.lo
    }

    pub fn hi(&self) -> &[f64] {
        &self.hi
    }

    /// Euclidean diameter (the main diagonal).
    pub fn diameter(&self) -> f64 {
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(l, h)| (h - l) * (h - l))
            .sum::<f64>()
            .sqrt()
    }

    pub fn center(&self) -> Point {
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(l, h)| 0.5 * (l + h))
            .collect()
    }

    /// Closed containment with a uniform slack on every axis.
    pub fn contains(&self, p: &[f64], slack: f64) -> bool {
        p.len() == self.dim()
            && (0..p.len()).all(|i| p[i] >= self.lo[i] - slack && p[i] <= self.hi[i] + slack)
    }

    /// Smallest box containing both.
    pub fn hull(&self, other: &Aabb) -> Aabb {
        let lo = self
            .lo
            .iter()
            .zip(&other.lo)
            .map(|(a, b)| a.min(*b))
            .collect();
        let hi = self
            .hi
            .iter()
            .zip(&other.hi)
            .map(|(a, b)| a.max(*b))
            .collect();
        Aabb { lo, hi }
    }

    /// Euclidean distance from a point to this closed box (0 inside).
    pub fn distance_to_point(&self, p: &[f64]) -> f64 {
        let mut s = 0.0;
        for (i, &pi) in p.iter().enumerate().take(self.dim()) {
            let g = (self.lo[i] - pi).max(pi - self.hi[i]).max(0.0);
            s += g * g;
        }
        s.sqrt()
    }
}

/// Euclidean distance between points of equal dimension.
pub fn euclid(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// A finite union of closed grid cells at resolution `h`, tagged with the
/// vertex whose ambient box anchors the grid.
///
/// Cells are indexed by their integer grid coordinates relative to the
/// ambient lower corner; the set of indices is kept sorted, so iteration
/// order — and therefore every downstream artifact — is deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct TaggedBoxSet {
    vertex: VertexId,
    ambient: Aabb,
    h: f64,
    cells: BTreeSet<Cell>,
}

impl TaggedBoxSet {
    /// Empty covering on the given grid.
    pub fn empty(vertex: VertexId, ambient: Aabb, h: f64) -> Result<Self, GeometryError> {
        if !h.is_finite() || h <= 0.0 {
            return Err(GeometryError::BadResolution(h));
        }
        Ok(TaggedBoxSet {
            vertex,
            ambient,
            h,
            cells: BTreeSet::new(),
        })
    }

    /// Covering consisting of every grid cell of the ambient box.
    pub fn full(vertex: VertexId, ambient: Aabb, h: f64) -> Result<Self, GeometryError> {
        let mut s = Self::empty(vertex, ambient, h)?;
        let n = s.cells_per_axis();
        let dim = s.dim();
        let mut idx = [0i64; 3];
        fn fill(axis: usize, dim: usize, n: &[i64; 3], idx: &mut Cell, out: &mut BTreeSet<Cell>) {
            if axis == dim {
                out.insert(*idx);
                return;
            }
            for i in 0..n[axis] {
                idx[axis] = i;
                fill(axis + 1, dim, n, idx, out);
            }
        }
        fill(0, dim, &n, &mut idx, &mut s.cells);
        Ok(s)
    }

    pub fn vertex(&self) -> VertexId {
        self.vertex
    }

    pub fn ambient(&self) -> &Aabb {
        &self.ambient
    }

    pub fn resolution(&self) -> f64 {
        self.h
    }

    pub fn dim(&self) -> usize {
        self.ambient.dim()
    }

    /// Euclidean diameter of a single cell, `h·√d`.
    pub fn cell_diameter(&self) -> f64 {
        self.h * (self.dim() as f64).sqrt()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> impl Iterator<Item = &Cell> {
        self.cells.iter()
    }

    pub fn contains_cell(&self, c: &Cell) -> bool {
        self.cells.contains(c)
    }

    pub fn insert_cell(&mut self, c: Cell) {
        self.cells.insert(c);
    }

    /// Number of grid cells along each axis (the last cell may overhang the
    /// ambient hi face when the extent is not a multiple of `h`).
    pub fn cells_per_axis(&self) -> [i64; 3] {
        let mut n = [1i64; 3];
        for (i, ni) in n.iter_mut().enumerate().take(self.dim()) {
            let span = (self.ambient.hi[i] - self.ambient.lo[i]) / self.h;
            *ni = (span - SNAP_REL).ceil().max(1.0) as i64;
        }
        n
    }

    /// Center point of a cell.
    pub fn cell_center(&self, c: &Cell) -> Point {
        (0..self.dim())
            .map(|i| self.ambient.lo[i] + (c[i] as f64 + 0.5) * self.h)
            .collect()
    }

    /// The closed box of a cell.
    pub fn cell_box(&self, c: &Cell) -> Aabb {
        let lo: Point = (0..self.dim())
            .map(|i| self.ambient.lo[i] + c[i] as f64 * self.h)
            .collect();
        let hi: Point = (0..self.dim())
            .map(|i| self.ambient.lo[i] + (c[i] + 1) as f64 * self.h)
            .collect();
        Aabb { lo, hi }
    }

    /// All cell centers, in sorted cell order.
    pub fn centers(&self) -> Vec<Point> {
        self.cells.iter().map(|c| self.cell_center(c)).collect()
    }

    /// Grid cell containing the point, if the point lies in the ambient box
    /// (with half-cell slack); points on a gridline resolve to the upper cell,
    /// clamped to the grid.
    pub fn cell_of_point(&self, p: &[f64]) -> Option<Cell> {
        if p.len() != self.dim() {
            return None;
        }
        let n = self.cells_per_axis();
        let mut c = [0i64; 3];
        for i in 0..self.dim() {
            let t = (p[i] - self.ambient.lo[i]) / self.h;
            if t < -0.5 || t > n[i] as f64 + 0.5 {
                return None;
            }
            c[i] = (t.floor() as i64).clamp(0, n[i] - 1);
        }
        Some(c)
    }

    /// Marks every cell whose interior meets the closed box `[lo, hi]`,
    /// treating coordinates within `1e-9·h` of a gridline as lying on it.
    /// Degenerate boxes thinner than the snap band fall back to their center
    /// cell so the region is still covered.
    pub fn insert_region(&mut self, lo: &[f64], hi: &[f64]) {
        debug_assert_eq!(lo.len(), self.dim());
        let n = self.cells_per_axis();
        let mut ranges = [(0i64, -1i64); 3];
        for i in 0..self.dim() {
            let t_lo = (lo[i] - self.ambient.lo[i]) / self.h;
            let t_hi = (hi[i] - self.ambient.lo[i]) / self.h;
            let mut a = (t_lo + SNAP_REL).floor() as i64;
            let mut b = (t_hi - SNAP_REL).floor() as i64;
            if b < a {
                // Thinner than the snap band: cover the midpoint's cell.
                let mid = 0.5 * (t_lo + t_hi);
                a = mid.floor() as i64;
                b = a;
            }
            a = a.clamp(0, n[i] - 1);
            b = b.clamp(0, n[i] - 1);
            ranges[i] = (a, b);
        }
        match self.dim() {
            1 => {
                for x in ranges[0].0..=ranges[0].1 {
                    self.cells.insert([x, 0, 0]);
                }
            }
            2 => {
                for x in ranges[0].0..=ranges[0].1 {
                    for y in ranges[1].0..=ranges[1].1 {
                        self.cells.insert([x, y, 0]);
                    }
                }
            }
            _ => {
                for x in ranges[0].0..=ranges[0].1 {
                    for y in ranges[1].0..=ranges[1].1 {
                        for z in ranges[2].0..=ranges[2].1 {
                            self.cells.insert([x, y, z]);
                        }
                    }
                }
            }
        }
    }

    /// Bounding box of the occupied cells. Errors on an empty set.
    pub fn bounding_box(&self) -> Result<Aabb, GeometryError> {
        let mut it = self.cells.iter();
        let first = it.next().ok_or(GeometryError::EmptySet)?;
        let mut lo = *first;
        let mut hi = *first;
        for c in it {
            for i in 0..3 {
                lo[i] = lo[i].min(c[i]);
                hi[i] = hi[i].max(c[i]);
            }
        }
        let lo_p: Point = (0..self.dim())
            .map(|i| self.ambient.lo[i] + lo[i] as f64 * self.h)
            .collect();
        let hi_p: Point = (0..self.dim())
            .map(|i| self.ambient.lo[i] + (hi[i] + 1) as f64 * self.h)
            .collect();
        Aabb::new(lo_p, hi_p)
    }

    /// Splits every cell into `factor^d` subcells of resolution `h/factor`.
    /// The covered region is unchanged.
    pub fn refine(&self, factor: u32) -> TaggedBoxSet {
        assert!(factor >= 1);
        let f = factor as i64;
        let mut cells = BTreeSet::new();
        let dim = self.dim();
        for c in &self.cells {
            let base = [c[0] * f, c[1] * f, c[2] * f];
            let reps = |axis: usize| if axis < dim { f } else { 1 };
            for dx in 0..reps(0) {
                for dy in 0..reps(1) {
                    for dz in 0..reps(2) {
                        cells.insert([base[0] + dx, base[1] + dy, base[2] + dz]);
                    }
                }
            }
        }
        TaggedBoxSet {
            vertex: self.vertex,
            ambient: self.ambient.clone(),
            h: self.h / factor as f64,
            cells,
        }
    }

    /// Chebyshev dilation by `steps` cells, clamped to the grid.
    pub fn dilate(&self, steps: i64) -> TaggedBoxSet {
        let n = self.cells_per_axis();
        let dim = self.dim();
        let mut cells = BTreeSet::new();
        for c in &self.cells {
            let reach = |axis: usize| if axis < dim { steps } else { 0 };
            for dx in -reach(0)..=reach(0) {
                for dy in -reach(1)..=reach(1) {
                    for dz in -reach(2)..=reach(2) {
                        let q = [c[0] + dx, c[1] + dy, c[2] + dz];
                        if (0..dim).all(|i| q[i] >= 0 && q[i] < n[i]) {
                            cells.insert(q);
                        }
                    }
                }
            }
        }
        TaggedBoxSet {
            vertex: self.vertex,
            ambient: self.ambient.clone(),
            h: self.h,
            cells,
        }
    }

    /// True when every cell of `self` is a cell of `other` (same grid).
    pub fn is_subset_of(&self, other: &TaggedBoxSet) -> bool {
        self.cells.is_subset(&other.cells)
    }

    /// Occupied cell nearest to `p` by center distance; ties resolve to the
    /// lexicographically smallest index. Errors on an empty set.
    pub fn nearest_cell(&self, p: &[f64]) -> Result<(Cell, f64), GeometryError> {
        if self.cells.is_empty() {
            return Err(GeometryError::EmptySet);
        }
        if p.len() != self.dim() {
            return Err(GeometryError::DimensionMismatch(p.len(), self.dim()));
        }
        // Start the ring search at the grid position of p (clamped).
        let n = self.cells_per_axis();
        let mut at = [0i64; 3];
        for i in 0..self.dim() {
            let t = ((p[i] - self.ambient.lo[i]) / self.h).floor() as i64;
            at[i] = t.clamp(0, n[i] - 1);
        }
        let mut best: Option<(f64, Cell)> = None;
        let mut r = 0i64;
        loop {
            let mut touched = false;
            for q in chebyshev_ring(at, r, self.dim()) {
                if (0..self.dim()).any(|i| q[i] < 0 || q[i] >= n[i]) {
                    continue;
                }
                touched = true;
                if self.cells.contains(&q) {
                    let d = euclid(&self.cell_center(&q), p);
                    let cand = (d, q);
                    if best.is_none_or(|b| cand.0 < b.0 || (cand.0 == b.0 && cand.1 < b.1)) {
                        best = Some(cand);
                    }
                }
            }
            // A cell on ring r' > r has center distance ≥ (r'-1)·h from the
            // cell of p, hence from p minus half a diagonal; once that bound
            // exceeds the best candidate we can stop.
            if let Some((d, c)) = best {
                if ((r - 1) as f64) * self.h - self.cell_diameter() > d {
                    return Ok((c, d));
                }
            }
            if !touched && r as usize > n.iter().max().copied().unwrap_or(1) as usize {
                // Rings have left the grid entirely; best must be set by now.
                let (d, c) = best.expect("nonempty set always yields a candidate");
                return Ok((c, d));
            }
            r += 1;
        }
    }
}

/// Cells at exact Chebyshev distance `r` from `at` (the full cube surface),
/// in deterministic order.
pub(crate) fn chebyshev_ring(at: Cell, r: i64, dim: usize) -> Vec<Cell> {
    let mut out = Vec::new();
    if r == 0 {
        out.push(at);
        return out;
    }
    let span = |axis: usize| -> std::ops::RangeInclusive<i64> {
        if axis < dim {
            -r..=r
        } else {
            0..=0
        }
    };
    for dx in span(0) {
        for dy in span(1) {
            for dz in span(2) {
                let cheb = dx.abs().max(dy.abs()).max(dz.abs());
                if cheb == r {
                    out.push([at[0] + dx, at[1] + dy, at[2] + dz]);
                }
            }
        }
    }
    out
}

/// A finite list of sample points tagged with a vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct TaggedPointCloud {
    pub vertex: VertexId,
    pub points: Vec<Point>,
}

impl TaggedPointCloud {
    pub fn new(vertex: VertexId, points: Vec<Point>) -> Self {
        TaggedPointCloud { vertex, points }
    }

    pub fn dim(&self) -> Option<usize> {
        self.points.first().map(|p| p.len())
    }
}
