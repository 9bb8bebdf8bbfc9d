//! Distances between coverings and clouds.
//!
//! * [`hausdorff_distance`] — discrete Hausdorff distance between the cell
//!   *centers* of two coverings. On a shared grid it runs on an exact squared
//!   Euclidean distance transform (two-pass parabola envelope per axis); on
//!   mismatched grids it falls back to a bucketed ring search over centers.
//!   Either way the value is within one cell width of the set-theoretic
//!   Hausdorff distance between the covered regions.
//! * [`min_separation`] — minimum Euclidean distance between closed cells, so
//!   touching cells give exactly 0.
//! * [`point_to_set`] — distance from a point to the covered region.

use std::collections::HashMap;

use super::{chebyshev_ring, euclid, Cell, GeometryError, Point, TaggedBoxSet};

/// Stand-in for +infinity that survives parabola arithmetic.
const BIG: f64 = 1e18;

/// Grid-size cap for the distance-transform path; larger joint grids use the
/// ring search instead.
const EDT_MAX_CELLS: i64 = 32_000_000;

fn check_compatible(a: &TaggedBoxSet, b: &TaggedBoxSet) -> Result<(), GeometryError> {
    if a.vertex() != b.vertex() {
        return Err(GeometryError::TagMismatch(a.vertex(), b.vertex()));
    }
    if a.dim() != b.dim() {
        return Err(GeometryError::DimensionMismatch(a.dim(), b.dim()));
    }
    if a.is_empty() || b.is_empty() {
        return Err(GeometryError::EmptySet);
    }
    Ok(())
}

fn same_grid(a: &TaggedBoxSet, b: &TaggedBoxSet) -> bool {
    let tol = 1e-12 * a.resolution();
    (a.resolution() - b.resolution()).abs() <= tol
        && a.ambient()
            .lo()
            .iter()
            .zip(b.ambient().lo())
            .all(|(x, y)| (x - y).abs() <= tol)
}

/// Discrete Hausdorff distance between the cell centers of two coverings with
/// the same vertex tag. Zero iff the cell sets cover identical centers; on a
/// shared grid that means equality as cell sets.
pub fn hausdorff_distance(a: &TaggedBoxSet, b: &TaggedBoxSet) -> Result<f64, GeometryError> {
    check_compatible(a, b)?;
    if same_grid(a, b) {
        if a == b {
            return Ok(0.0);
        }
        if let Some(d) = hausdorff_same_grid(a, b) {
            return Ok(d);
        }
    }
    // Mismatched grids (or a grid too large to transform): centers as clouds.
    let pa = a.centers();
    let pb = b.centers();
    let bucket = a.resolution().max(b.resolution());
    let d1 = directed_cloud(&pa, &pb, bucket);
    let d2 = directed_cloud(&pb, &pa, bucket);
    Ok(d1.max(d2))
}

/// Hausdorff distance between two point clouds (no tags checked beyond
/// nonemptiness); bucket size is chosen from the joint extent.
pub fn hausdorff_distance_clouds(a: &[Point], b: &[Point]) -> Result<f64, GeometryError> {
    if a.is_empty() || b.is_empty() {
        return Err(GeometryError::EmptySet);
    }
    if a[0].len() != b[0].len() {
        return Err(GeometryError::DimensionMismatch(a[0].len(), b[0].len()));
    }
    let dim = a[0].len();
    // Bucket size: joint extent divided by a per-axis point budget.
    let mut lo = a[0].clone();
    let mut hi = a[0].clone();
    for p in a.iter().chain(b) {
        for i in 0..dim {
            lo[i] = lo[i].min(p[i]);
            hi[i] = hi[i].max(p[i]);
        }
    }
    let extent = lo
        .iter()
        .zip(&hi)
        .map(|(l, h)| h - l)
        .fold(0.0f64, f64::max);
    let n = (a.len().max(b.len()) as f64).powf(1.0 / dim as f64).ceil();
    let bucket = (extent / n.max(1.0)).max(1e-300);
    let d1 = directed_cloud(a, b, bucket);
    let d2 = directed_cloud(b, a, bucket);
    Ok(d1.max(d2))
}

/// max over `from` of the distance to the nearest point of `to`.
fn directed_cloud(from: &[Point], to: &[Point], bucket: f64) -> f64 {
    let dim = to[0].len();
    let key = |p: &[f64]| -> Cell {
        let mut k = [0i64; 3];
        for i in 0..dim {
            k[i] = (p[i] / bucket).floor() as i64;
        }
        k
    };
    let mut map: HashMap<Cell, Vec<usize>> = HashMap::new();
    for (i, p) in to.iter().enumerate() {
        map.entry(key(p)).or_default().push(i);
    }
    let mut worst = 0.0f64;
    for p in from {
        let at = key(p);
        let mut best = f64::INFINITY;
        let mut r = 0i64;
        loop {
            for q in chebyshev_ring(at, r, dim) {
                if let Some(list) = map.get(&q) {
                    for &i in list {
                        best = best.min(euclid(p, &to[i]));
                    }
                }
            }
            // Points in ring r' > r lie at distance ≥ (r'-1)·bucket.
            let settled =
                best <= ((r - 1).max(0) as f64) * bucket || r as f64 * bucket > best + 2.0 * bucket;
            if settled && best.is_finite() {
                break;
            }
            r += 1;
        }
        worst = worst.max(best);
    }
    worst
}

/// Exact squared-distance-transform Hausdorff on a shared grid. Returns None
/// when the joint index bounding box is too large.
fn hausdorff_same_grid(a: &TaggedBoxSet, b: &TaggedBoxSet) -> Option<f64> {
    let dim = a.dim();
    let mut lo = [i64::MAX; 3];
    let mut hi = [i64::MIN; 3];
    for c in a.cells().chain(b.cells()) {
        for i in 0..3 {
            lo[i] = lo[i].min(c[i]);
            hi[i] = hi[i].max(c[i]);
        }
    }
    let mut shape = [1usize; 3];
    let mut volume: i64 = 1;
    for i in 0..dim {
        let n = hi[i] - lo[i] + 1;
        volume = volume.saturating_mul(n);
        shape[i] = n as usize;
    }
    if volume > EDT_MAX_CELLS {
        return None;
    }
    let d1 = directed_same_grid(a, b, lo, shape, dim);
    let d2 = directed_same_grid(b, a, lo, shape, dim);
    Some(d1.max(d2) * a.resolution())
}

/// max over cells of `from` of sqrt(squared index distance to `to`), in index
/// units.
fn directed_same_grid(
    from: &TaggedBoxSet,
    to: &TaggedBoxSet,
    lo: [i64; 3],
    shape: [usize; 3],
    dim: usize,
) -> f64 {
    let (nx, ny, nz) = (shape[0], shape[1], shape[2]);
    let index = |c: &Cell| -> usize {
        let x = (c[0] - lo[0]) as usize;
        let y = if dim > 1 { (c[1] - lo[1]) as usize } else { 0 };
        let z = if dim > 2 { (c[2] - lo[2]) as usize } else { 0 };
        (z * ny + y) * nx + x
    };
    let mut field = vec![BIG; nx * ny * nz];
    for c in to.cells() {
        field[index(c)] = 0.0;
    }
    // Pass per axis: 1-D squared transform along every grid line.
    let strides = [1usize, nx, nx * ny];
    let counts = [nx, ny, nz];
    let mut f_line = Vec::new();
    let mut d_line = Vec::new();
    for axis in 0..dim {
        let n = counts[axis];
        if n == 1 {
            continue;
        }
        let stride = strides[axis];
        // Iterate all lines along `axis`.
        let other: Vec<usize> = (0..3).filter(|&i| i != axis).collect();
        for u in 0..counts[other[0]] {
            for v in 0..counts[other[1]] {
                let base = u * strides[other[0]] + v * strides[other[1]];
                f_line.clear();
                f_line.extend((0..n).map(|i| field[base + i * stride]));
                dt_1d(&f_line, &mut d_line);
                for i in 0..n {
                    field[base + i * stride] = d_line[i];
                }
            }
        }
    }
    let mut worst = 0.0f64;
    for c in from.cells() {
        worst = worst.max(field[index(c)]);
    }
    worst.sqrt()
}

/// One-dimensional squared distance transform: d[q] = min_p (q-p)² + f[p].
/// Lower envelope of parabolas (Felzenszwalb–Huttenlocher).
fn dt_1d(f: &[f64], d: &mut Vec<f64>) {
    let n = f.len();
    d.clear();
    d.resize(n, 0.0);
    let mut v = vec![0usize; n];
    let mut z = vec![0.0f64; n + 1];
    let mut k = 0usize;
    v[0] = 0;
    z[0] = -BIG;
    z[1] = BIG;
    for q in 1..n {
        let sq = |i: usize| (i * i) as f64;
        let mut s = ((f[q] + sq(q)) - (f[v[k]] + sq(v[k]))) / (2.0 * (q as f64 - v[k] as f64));
        while s <= z[k] {
            k -= 1;
            s = ((f[q] + sq(q)) - (f[v[k]] + sq(v[k]))) / (2.0 * (q as f64 - v[k] as f64));
        }
        k += 1;
        v[k] = q;
        z[k] = s;
        z[k + 1] = BIG;
    }
    k = 0;
    for (q, out) in d.iter_mut().enumerate() {
        while z[k + 1] < q as f64 {
            k += 1;
        }
        let dq = q as f64 - v[k] as f64;
        *out = dq * dq + f[v[k]];
    }
}

/// Minimum Euclidean distance between the closed cells of two coverings with
/// the same vertex tag: 0 iff some cells intersect (sharing a face, edge, or
/// corner counts).
pub fn min_separation(a: &TaggedBoxSet, b: &TaggedBoxSet) -> Result<f64, GeometryError> {
    check_compatible(a, b)?;
    if same_grid(a, b) {
        // Shared cells short-circuit to zero.
        if a.cells().any(|c| b.contains_cell(c)) {
            return Ok(0.0);
        }
    }
    // Bucket b's cells by (coarsest) resolution and ring-search from each cell
    // of a. Cell-box to cell-box distances; early exit on exact contact.
    let bucket = a.resolution().max(b.resolution());
    let dim = a.dim();
    let key = |p: &[f64]| -> Cell {
        let mut k = [0i64; 3];
        for i in 0..dim {
            k[i] = (p[i] / bucket).floor() as i64;
        }
        k
    };
    let b_cells: Vec<Cell> = b.cells().copied().collect();
    let mut map: HashMap<Cell, Vec<usize>> = HashMap::new();
    for (i, c) in b_cells.iter().enumerate() {
        map.entry(key(&b.cell_center(c))).or_default().push(i);
    }
    let mut best = f64::INFINITY;
    'outer: for c in a.cells() {
        let abox = a.cell_box(c);
        let at = key(&a.cell_center(c));
        let mut r = 0i64;
        let mut local = f64::INFINITY;
        loop {
            for q in chebyshev_ring(at, r, dim) {
                if let Some(list) = map.get(&q) {
                    for &i in list {
                        let bbox = b.cell_box(&b_cells[i]);
                        let mut s = 0.0;
                        for ax in 0..dim {
                            let g = (bbox.lo()[ax] - abox.hi()[ax])
                                .max(abox.lo()[ax] - bbox.hi()[ax])
                                .max(0.0);
                            s += g * g;
                        }
                        local = local.min(s.sqrt());
                    }
                }
            }
            if local == 0.0 {
                best = 0.0;
                break 'outer;
            }
            // Boxes reached via ring r' have gap ≥ (r'-2)·bucket; stop once
            // that exceeds what we already found (or the global best).
            let floor_bound = ((r - 1).max(0) as f64) * bucket - 2.0 * bucket;
            if local.is_finite() && floor_bound > local.min(best) {
                break;
            }
            if !local.is_finite() && (r as f64) * bucket > 1e6 * (1.0 + best.min(1e300)) {
                break; // degenerate guard; cannot trigger on validated data
            }
            r += 1;
        }
        best = best.min(local);
        if best == 0.0 {
            break;
        }
    }
    Ok(best)
}

/// Euclidean distance from a point to the covered region (0 inside some cell).
pub fn point_to_set(p: &[f64], s: &TaggedBoxSet) -> Result<f64, GeometryError> {
    if s.is_empty() {
        return Err(GeometryError::EmptySet);
    }
    if p.len() != s.dim() {
        return Err(GeometryError::DimensionMismatch(p.len(), s.dim()));
    }
    // Nearest center first, then check the handful of boxes around it.
    let (cell, _) = s.nearest_cell(p)?;
    let mut best = s.cell_box(&cell).distance_to_point(p);
    if best == 0.0 {
        return Ok(0.0);
    }
    // The true nearest box can only be within ceil(best/h)+1 rings.
    let reach = (best / s.resolution()).ceil() as i64 + 1;
    if let Some(start) = s.cell_of_point(p).or(Some(cell)) {
        for r in 0..=reach {
            for q in chebyshev_ring(start, r, s.dim()) {
                if s.contains_cell(&q) {
                    best = best.min(s.cell_box(&q).distance_to_point(p));
                }
            }
            if best <= ((r - 1).max(0) as f64) * s.resolution() {
                break;
            }
        }
    }
    Ok(best)
}
