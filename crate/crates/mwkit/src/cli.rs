//! Command implementations behind the `mwkit` binary.
//!
//! Every command is an ordinary function from parsed arguments to a
//! [`CmdResult`]: a structured [`Report`] plus a process exit code, so the
//! whole surface is testable without spawning processes. The binary in
//! `src/main.rs` only parses flags, calls one of these, prints the report,
//! and exits with the returned code.
//!
//! Exit codes are uniform across commands:
//!
//! * `0` — success / verdict passed;
//! * `1` — an honest negative verdict (invalid system, failed verification,
//!   refused isomorphism, no witness);
//! * `2` — malformed input (config or certificate syntax, bad flags);
//! * `3` — resource exhaustion or an undecided outcome (iteration budget,
//!   classification stuck at `unknown`, both systems overlapping).
//!
//! Reports open with the `command` key, then digest every input file, and
//! close with `timing_ms`; everything in between is command-specific and
//! documented in `docs/FORMATS.md`.

use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use crate::attractor::{chaos_game, solve_invariant_list, AttractorError, InvariantList};
use crate::config::{
    bracket_groups, load_config, number_list, take_bracket, ConfigError, SystemConfig,
};
use crate::correspondence::{
    build_v, decide_iso_totally_disconnected, refute_certificate, verify_isomorphism, AddressTable,
    AffinePair, ConjugacyCertificate, CorrError, CorrSpace, DecideOptions, IsoOutcome,
    MapDescriptor, SampleGrid,
};
use crate::geometry::{Aabb, Cell, TaggedBoxSet};
use crate::graph::{EdgeId, FinitePath, VertexId};
use crate::mw::{composite_map, global_ratio, AffineMap, MWGraph, MwError};
use crate::render::{render_cloud, render_covering};
use crate::report::{push_input_digest, Report};
use crate::structure::{
    aperiodicity_witness, classify_disconnected, DisconnectednessReport, StructureError, Verdict,
};
use crate::symbolic::{address_of, coding_map, SymbolicError};
use nalgebra::{DMatrix, DVector};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

/// What a command hands back to the process shell.
#[derive(Debug)]
pub struct CmdResult {
    pub report: Report,
    pub exit: i32,
}

/// How `render` fills the canvas.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderMode {
    /// Paint the box covering of the invariant list.
    Covering,
    /// Plot chaos-game sample points.
    Cloud,
}

struct Timer(Instant);

impl Timer {
    fn start() -> Timer {
        Timer(Instant::now())
    }

    fn finish(self, mut report: Report, exit: i32) -> CmdResult {
        report.push("timing_ms", self.0.elapsed().as_millis());
        CmdResult { report, exit }
    }
}

fn fmt_point(p: &[f64]) -> String {
    p.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn fmt_edges(edges: &[EdgeId]) -> String {
    edges
        .iter()
        .map(|e| e.0.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Digests and parses a config file, then validates the system. On any
/// failure the report gains `error`/`issue.*` keys and the exit code is
/// returned as the error value.
fn open_system(
    report: &mut Report,
    index: usize,
    path: &Path,
) -> Result<(SystemConfig, MWGraph), i32> {
    if let Err(e) = push_input_digest(report, index, path) {
        report.push("error", format!("cannot read {}: {e}", path.display()));
        return Err(EXIT_INPUT);
    }
    let cfg = match load_config(path) {
        Ok(c) => c,
        Err(ConfigError::Parse { issues }) => {
            report.push("error", format!("{} config parse error(s)", issues.len()));
            for (k, i) in issues.iter().enumerate() {
                report.push(format!("issue.{k}"), i);
            }
            return Err(EXIT_INPUT);
        }
        Err(e) => {
            report.push("error", e);
            return Err(EXIT_INPUT);
        }
    };
    match cfg.build() {
        Ok(mw) => Ok((cfg, mw)),
        Err(e) => {
            report.push("error", format!("invalid system: {e}"));
            Err(EXIT_INPUT)
        }
    }
}

/// Grid step whose full ambient grid stays within `total_cells` cells,
/// shaped like a power of the global contraction ratio so cylinder images
/// align with cell boundaries where possible.
fn budget_resolution(mw: &MWGraph, total_cells: f64) -> f64 {
    let (_, c) = global_ratio(mw);
    let dim = mw.dim() as f64;
    let depth = ((total_cells.ln() / dim) / (1.0 / c).ln()).floor().max(2.0) as i32;
    c.powi(depth) * mw.max_ambient_diameter()
}

fn pick_resolution(flag: Option<f64>, cfg: &SystemConfig, mw: &MWGraph, total_cells: f64) -> f64 {
    flag.or(cfg.params.resolution)
        .unwrap_or_else(|| budget_resolution(mw, total_cells))
}

// ---------------------------------------------------------------------------
// Box-list and CSV persistence
// ---------------------------------------------------------------------------

/// Writes a `.boxes` file: resolution, then per vertex a header with its
/// ambient box followed by one occupied cell (grid indices) per line.
pub fn write_boxes(sets: &[TaggedBoxSet], path: &Path) -> std::io::Result<()> {
    let mut out = String::from("boxes-version 1\n");
    let _ = writeln!(out, "resolution {}", sets[0].resolution());
    for s in sets {
        let dim = s.dim();
        let mut boxes = String::new();
        for i in 0..dim {
            let _ = write!(boxes, " [{}, {}]", s.ambient().lo()[i], s.ambient().hi()[i]);
        }
        let _ = writeln!(
            out,
            "vertex {} dim {} cells {} box{}",
            s.vertex().0,
            dim,
            s.len(),
            boxes
        );
        for c in s.cells() {
            let row: Vec<String> = (0..dim).map(|i| c[i].to_string()).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
    }
    std::fs::write(path, out)
}

/// Reads a `.boxes` file back into tagged coverings.
pub fn read_boxes(path: &Path) -> Result<Vec<TaggedBoxSet>, String> {
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    let mut lines = text.lines().enumerate().peekable();
    let mut expect = |what: &str| -> Result<(usize, &str), String> {
        lines
            .next()
            .ok_or_else(|| format!("unexpected end of file, wanted {what}"))
    };
    let (_, first) = expect("version header")?;
    if first.trim() != "boxes-version 1" {
        return Err(format!("unsupported header `{first}`"));
    }
    let (_, res_line) = expect("resolution")?;
    let h: f64 = res_line
        .trim()
        .strip_prefix("resolution ")
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| format!("bad resolution line `{res_line}`"))?;

    let mut sets = Vec::new();
    let mut text_lines = text.lines().enumerate().skip(2).peekable();
    while let Some((ln, line)) = text_lines.next() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() < 7 || toks[0] != "vertex" || toks[2] != "dim" || toks[4] != "cells" {
            return Err(format!(
                "line {}: expected vertex header, got `{line}`",
                ln + 1
            ));
        }
        let vid: u32 = toks[1]
            .parse()
            .map_err(|_| format!("bad vertex id `{}`", toks[1]))?;
        let dim: usize = toks[3]
            .parse()
            .map_err(|_| format!("bad dim `{}`", toks[3]))?;
        let n: usize = toks[5]
            .parse()
            .map_err(|_| format!("bad cell count `{}`", toks[5]))?;
        let box_part = line.split(" box").nth(1).ok_or("missing ambient box")?;
        let groups = bracket_groups(box_part).map_err(|e| format!("line {}: {e}", ln + 1))?;
        if groups.len() != dim {
            return Err(format!(
                "line {}: {} axis ranges for dim {dim}",
                ln + 1,
                groups.len()
            ));
        }
        let mut lo = Vec::new();
        let mut hi = Vec::new();
        for g in &groups {
            let nums = number_list(g).map_err(|e| format!("line {}: {e}", ln + 1))?;
            if nums.len() != 2 {
                return Err(format!("line {}: axis range needs lo, hi", ln + 1));
            }
            lo.push(nums[0]);
            hi.push(nums[1]);
        }
        let ambient = Aabb::new(lo, hi).map_err(|e| e.to_string())?;
        let mut set = TaggedBoxSet::empty(VertexId(vid), ambient, h).map_err(|e| e.to_string())?;
        for _ in 0..n {
            let (cln, cl) = text_lines
                .next()
                .ok_or_else(|| format!("truncated cell list for vertex {vid}"))?;
            let idx: Result<Vec<i64>, _> = cl.split_whitespace().map(str::parse).collect();
            let idx = idx.map_err(|_| format!("line {}: bad cell `{cl}`", cln + 1))?;
            if idx.len() != dim {
                return Err(format!(
                    "line {}: cell has {} indices, dim {dim}",
                    cln + 1,
                    idx.len()
                ));
            }
            let mut cell: Cell = [0; 3];
            cell[..dim].copy_from_slice(&idx);
            set.insert_cell(cell);
        }
        sets.push(set);
    }
    if sets.is_empty() {
        return Err("no vertex blocks".into());
    }
    Ok(sets)
}

/// Writes covering cell centers as CSV: `vertex,x[,y[,z]]`.
pub fn write_centers_csv(sets: &[TaggedBoxSet], path: &Path) -> std::io::Result<()> {
    let dim = sets[0].dim();
    let mut out = String::from("vertex");
    for i in 0..dim {
        let _ = write!(out, ",x{i}");
    }
    out.push('\n');
    for s in sets {
        for c in s.centers() {
            let _ = write!(out, "{}", s.vertex().0);
            for x in &c {
                let _ = write!(out, ",{x}");
            }
            out.push('\n');
        }
    }
    std::fs::write(path, out)
}

// ---------------------------------------------------------------------------
// Certificate persistence
// ---------------------------------------------------------------------------

fn fmt_matrix(m: &DMatrix<f64>) -> String {
    let mut rows = Vec::new();
    for r in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols()).map(|c| m[(r, c)].to_string()).collect();
        rows.push(row.join(", "));
    }
    format!("[{}]", rows.join("; "))
}

/// Serializes a conjugacy certificate together with the grid steps it was
/// built on, so `verify-cert` can reconstruct the exact sample grids.
pub fn write_certificate(
    cert: &ConjugacyCertificate,
    grid1_h: f64,
    grid2_h: f64,
    path: &Path,
) -> std::io::Result<()> {
    let mut out = String::from("cert-version 1\n");
    let _ = writeln!(out, "grid1 {grid1_h}");
    let _ = writeln!(out, "grid2 {grid2_h}");
    match &cert.f {
        MapDescriptor::Affine(pairs) => {
            out.push_str("kind affine\n");
            for (vi, pair) in pairs.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "map {vi} matrix {} offset [{}]",
                    fmt_matrix(pair.forward.matrix()),
                    pair.forward
                        .offset()
                        .iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                );
            }
        }
        MapDescriptor::AddressTable(table) => {
            out.push_str("kind address-table\n");
            for (vi, rows) in table.forward.iter().enumerate() {
                for (idx, p) in rows.iter().enumerate() {
                    let _ = writeln!(out, "fwd {vi} {idx} : {}", fmt_point(p).replace(',', " "));
                }
            }
            for (vi, rows) in table.inverse.iter().enumerate() {
                for (idx, p) in rows.iter().enumerate() {
                    let _ = writeln!(out, "inv {vi} {idx} : {}", fmt_point(p).replace(',', " "));
                }
            }
        }
    }
    let _ = writeln!(out, "covers {}", cert.cover.len());
    for (j, sigma) in cert.sigmas.iter().enumerate() {
        let table: Vec<String> = sigma.iter().map(|e| e.0.to_string()).collect();
        let _ = writeln!(out, "sigma {j} : {}", table.join(" "));
    }
    for (j, pieces) in cert.cover.iter().enumerate() {
        for (vi, set) in pieces.iter().enumerate() {
            let _ = writeln!(out, "cover {j} {vi} cells {}", set.len());
            for c in set.cells() {
                let row: Vec<String> = (0..set.dim()).map(|i| c[i].to_string()).collect();
                let _ = writeln!(out, "cell {}", row.join(" "));
            }
        }
    }
    std::fs::write(path, out)
}

/// Why loading a certificate failed, split by the exit code it maps to.
#[derive(Debug)]
pub enum CertLoadError {
    /// Syntax or shape defect in the file (exit 2).
    Parse(String),
    /// Grid reconstruction blew the iteration budget (exit 3).
    Resource(String),
}

/// Reads a certificate and rebuilds the sample grids it references.
///
/// The file stores the two grid steps; the grids themselves are recomputed
/// from the systems, which is deterministic, so sample indices in the file
/// line up with the reconstructed grids.
pub fn load_certificate(
    path: &Path,
    mw1: &MWGraph,
    mw2: &MWGraph,
) -> Result<(ConjugacyCertificate, SampleGrid, SampleGrid), CertLoadError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CertLoadError::Parse(format!("cannot read {}: {e}", path.display())))?;
    let bad = |m: String| CertLoadError::Parse(m);

    let g1 = mw1.graph();
    let nv = g1.vertices().len();
    let ne = g1.edge_count();
    let dim1 = mw1.dim();
    let dim2 = mw2.dim();

    let mut grid1_h = None;
    let mut grid2_h = None;
    let mut kind = None;
    let mut covers: Option<usize> = None;
    let mut sigmas: Vec<Option<Vec<EdgeId>>> = Vec::new();
    let mut maps: Vec<Option<(DMatrix<f64>, DVector<f64>)>> = vec![None; nv];
    // Address-table rows keyed by sample index, resolved after grids exist.
    let mut fwd_rows: Vec<Vec<(usize, Vec<f64>)>> = vec![Vec::new(); nv];
    let mut inv_rows: Vec<Vec<(usize, Vec<f64>)>> = vec![Vec::new(); nv];
    // (cover set, vertex position) -> cells.
    let mut cover_cells: Vec<(usize, usize, Vec<Cell>)> = Vec::new();
    let mut pending_cells: Option<(usize, usize, usize)> = None;

    for (i, raw_line) in text.lines().enumerate() {
        let line = raw_line.trim();
        if line.is_empty() {
            continue;
        }
        let ln = i + 1;
        let toks: Vec<&str> = line.split_whitespace().collect();
        if let Some((j, vi, n)) = pending_cells {
            if toks[0] == "cell" {
                let idx: Result<Vec<i64>, _> = toks[1..].iter().map(|t| t.parse()).collect();
                let idx = idx.map_err(|_| bad(format!("line {ln}: bad cell `{line}`")))?;
                if idx.len() != dim1 {
                    return Err(bad(format!("line {ln}: cell has {} indices", idx.len())));
                }
                let mut cell: Cell = [0; 3];
                cell[..dim1].copy_from_slice(&idx);
                let slot = cover_cells
                    .iter_mut()
                    .find(|(cj, cv, _)| *cj == j && *cv == vi)
                    .expect("block opened");
                slot.2.push(cell);
                if slot.2.len() == n {
                    pending_cells = None;
                }
                continue;
            }
            return Err(bad(format!(
                "line {ln}: expected {n} cell lines, got `{line}`"
            )));
        }
        match toks[0] {
            "cert-version" => {
                if toks.get(1) != Some(&"1") {
                    return Err(bad(format!("unsupported certificate version `{line}`")));
                }
            }
            "grid1" | "grid2" => {
                let h: f64 = toks
                    .get(1)
                    .and_then(|t| t.parse().ok())
                    .filter(|h| *h > 0.0)
                    .ok_or_else(|| bad(format!("line {ln}: bad grid step `{line}`")))?;
                if toks[0] == "grid1" {
                    grid1_h = Some(h);
                } else {
                    grid2_h = Some(h);
                }
            }
            "kind" => match toks.get(1) {
                Some(&"affine") | Some(&"address-table") => kind = Some(toks[1].to_string()),
                _ => return Err(bad(format!("line {ln}: unknown kind `{line}`"))),
            },
            "covers" => {
                let j: usize = toks
                    .get(1)
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| bad(format!("line {ln}: bad cover count")))?;
                covers = Some(j);
                sigmas.resize(j, None);
            }
            "sigma" => {
                let j: usize = toks
                    .get(1)
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| bad(format!("line {ln}: bad sigma index")))?;
                if toks.get(2) != Some(&":") {
                    return Err(bad(format!("line {ln}: expected `sigma {j} : …`")));
                }
                let table: Result<Vec<u32>, _> = toks[3..].iter().map(|t| t.parse()).collect();
                let table = table.map_err(|_| bad(format!("line {ln}: bad edge table")))?;
                if table.len() != ne || table.iter().any(|t| *t as usize >= ne) {
                    return Err(bad(format!(
                        "line {ln}: edge table must list {ne} edges in range"
                    )));
                }
                if j >= sigmas.len() {
                    return Err(bad(format!("line {ln}: sigma index {j} out of range")));
                }
                sigmas[j] = Some(table.into_iter().map(EdgeId).collect());
            }
            "cover" => {
                let (j, vi, n) = match (
                    toks.get(1).and_then(|t| t.parse::<usize>().ok()),
                    toks.get(2).and_then(|t| t.parse::<usize>().ok()),
                    toks.get(3).copied(),
                    toks.get(4).and_then(|t| t.parse::<usize>().ok()),
                ) {
                    (Some(j), Some(vi), Some("cells"), Some(n)) => (j, vi, n),
                    _ => return Err(bad(format!("line {ln}: bad cover header `{line}`"))),
                };
                if vi >= nv {
                    return Err(bad(format!("line {ln}: vertex position {vi} out of range")));
                }
                cover_cells.push((j, vi, Vec::with_capacity(n)));
                if n > 0 {
                    pending_cells = Some((j, vi, n));
                }
            }
            "map" => {
                let vi: usize = toks
                    .get(1)
                    .and_then(|t| t.parse().ok())
                    .filter(|v| *v < nv)
                    .ok_or_else(|| bad(format!("line {ln}: bad map vertex")))?;
                let rest = line.split_once("matrix").map(|x| x.1).unwrap_or("");
                let (mat, rest) = take_bracket(rest).map_err(|e| bad(format!("line {ln}: {e}")))?;
                let rest = rest
                    .trim()
                    .strip_prefix("offset")
                    .ok_or_else(|| bad(format!("line {ln}: missing offset")))?;
                let (off, _) = take_bracket(rest).map_err(|e| bad(format!("line {ln}: {e}")))?;
                let rows: Vec<&str> = mat.split(';').collect();
                let mut entries = Vec::new();
                for r in &rows {
                    entries.extend(number_list(r).map_err(|e| bad(format!("line {ln}: {e}")))?);
                }
                if rows.len() != dim2 || entries.len() != dim2 * dim2 {
                    return Err(bad(format!("line {ln}: matrix must be {dim2}x{dim2}")));
                }
                let offset = number_list(&off).map_err(|e| bad(format!("line {ln}: {e}")))?;
                if offset.len() != dim2 {
                    return Err(bad(format!("line {ln}: offset must have {dim2} entries")));
                }
                maps[vi] = Some((
                    DMatrix::from_row_slice(dim2, dim2, &entries),
                    DVector::from_vec(offset),
                ));
            }
            "fwd" | "inv" => {
                let vi: usize = toks
                    .get(1)
                    .and_then(|t| t.parse().ok())
                    .filter(|v| *v < nv)
                    .ok_or_else(|| bad(format!("line {ln}: bad table vertex")))?;
                let idx: usize = toks
                    .get(2)
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| bad(format!("line {ln}: bad sample index")))?;
                if toks.get(3) != Some(&":") {
                    return Err(bad(format!("line {ln}: expected `: coords`")));
                }
                let coords: Result<Vec<f64>, _> = toks[4..].iter().map(|t| t.parse()).collect();
                let coords = coords.map_err(|_| bad(format!("line {ln}: bad coordinates")))?;
                let want_dim = if toks[0] == "fwd" { dim2 } else { dim1 };
                if coords.len() != want_dim {
                    return Err(bad(format!(
                        "line {ln}: point needs {want_dim} coordinates"
                    )));
                }
                if toks[0] == "fwd" {
                    fwd_rows[vi].push((idx, coords));
                } else {
                    inv_rows[vi].push((idx, coords));
                }
            }
            _ => return Err(bad(format!("line {ln}: unknown statement `{line}`"))),
        }
    }

    if pending_cells.is_some() {
        return Err(bad("truncated cover cell list".into()));
    }
    let grid1_h = grid1_h.ok_or_else(|| bad("missing grid1 step".into()))?;
    let grid2_h = grid2_h.ok_or_else(|| bad("missing grid2 step".into()))?;
    let kind = kind.ok_or_else(|| bad("missing kind".into()))?;
    let j_total = covers.ok_or_else(|| bad("missing covers count".into()))?;
    if j_total == 0 {
        return Err(bad("certificate needs at least one cover set".into()));
    }
    let sigmas: Vec<Vec<EdgeId>> = sigmas
        .into_iter()
        .enumerate()
        .map(|(j, s)| s.ok_or_else(|| bad(format!("missing sigma {j}"))))
        .collect::<Result<_, _>>()?;

    // Deterministic grid reconstruction at the stored steps.
    let resource = |e: AttractorError| CertLoadError::Resource(e.to_string());
    let k1 = solve_invariant_list(mw1, grid1_h, 256).map_err(resource)?;
    let k2 = solve_invariant_list(mw2, grid2_h, 256).map_err(resource)?;
    let grid1 = SampleGrid::from_invariant_list(&k1);
    let grid2 = SampleGrid::from_invariant_list(&k2);

    let f = if kind == "affine" {
        let mut pairs = Vec::with_capacity(nv);
        for (vi, m) in maps.into_iter().enumerate() {
            let (matrix, offset) =
                m.ok_or_else(|| bad(format!("missing map for vertex position {vi}")))?;
            let fwd = AffineMap::new(matrix, offset).map_err(|e| bad(format!("map {vi}: {e}")))?;
            let pair = AffinePair::from_forward(fwd)
                .ok_or_else(|| bad(format!("map {vi} is not invertible")))?;
            pairs.push(pair);
        }
        MapDescriptor::Affine(pairs)
    } else {
        let fill =
            |rows: Vec<Vec<(usize, Vec<f64>)>>, grid: &SampleGrid, what: &str| {
                let mut table = Vec::with_capacity(nv);
                for (vi, entries) in rows.into_iter().enumerate() {
                    let n = grid.samples(vi).len();
                    let mut out: Vec<Option<Vec<f64>>> = vec![None; n];
                    for (idx, p) in entries {
                        if idx >= n {
                            return Err(bad(format!(
                            "{what} table: sample {idx} out of range at vertex {vi} (grid has {n})"
                        )));
                        }
                        if out[idx].replace(p).is_some() {
                            return Err(bad(format!(
                                "{what} table: duplicate sample {idx} at vertex {vi}"
                            )));
                        }
                    }
                    let complete: Option<Vec<Vec<f64>>> = out.into_iter().collect();
                    table.push(complete.ok_or_else(|| {
                        bad(format!("{what} table: missing samples at vertex {vi}"))
                    })?);
                }
                Ok(table)
            };
        let forward = fill(fwd_rows, &grid1, "forward")?;
        let inverse = fill(inv_rows, &grid2, "inverse")?;
        MapDescriptor::AddressTable(AddressTable { forward, inverse })
    };

    let mut cover: Vec<Vec<TaggedBoxSet>> = (0..j_total)
        .map(|_| {
            mw1.graph()
                .vertices()
                .iter()
                .map(|&v| {
                    TaggedBoxSet::empty(v, mw1.ambient_of(v).clone(), grid1_h)
                        .expect("ambient boxes validated")
                })
                .collect()
        })
        .collect();
    for (j, vi, cells) in cover_cells {
        if j >= j_total {
            return Err(bad(format!("cover index {j} out of range")));
        }
        for c in cells {
            cover[j][vi].insert_cell(c);
        }
    }

    Ok((ConjugacyCertificate { f, cover, sigmas }, grid1, grid2))
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

/// Parses and validates a system description.
pub fn cmd_validate(config: &Path) -> CmdResult {
    let t = Timer::start();
    let mut report = Report::new("validate");
    if let Err(e) = push_input_digest(&mut report, 0, config) {
        report.push("error", format!("cannot read {}: {e}", config.display()));
        return t.finish(report, EXIT_INPUT);
    }
    let cfg = match load_config(config) {
        Ok(c) => c,
        Err(ConfigError::Parse { issues }) => {
            report.push("valid", false);
            for (k, i) in issues.iter().enumerate() {
                report.push(format!("issue.{k}"), i);
            }
            return t.finish(report, EXIT_INPUT);
        }
        Err(e) => {
            report.push("error", e);
            return t.finish(report, EXIT_INPUT);
        }
    };
    if let Some(name) = &cfg.name {
        report.push("name", name);
    }
    match cfg.build() {
        Ok(mw) => {
            report.push("valid", true);
            report.push("vertices", mw.graph().vertices().len());
            report.push("edges", mw.graph().edge_count());
            report.push("dim", mw.dim());
            let (lo, hi) = global_ratio(&mw);
            report.push("ratio.lo", lo);
            report.push("ratio.hi", hi);
            for e in mw.graph().edge_ids() {
                let m = mw.map_of(e);
                report.push(format!("edge.{}.ratio.lo", e.0), m.c_lo());
                report.push(format!("edge.{}.ratio.hi", e.0), m.c_hi());
            }
            t.finish(report, EXIT_OK)
        }
        Err(MwError::Invalid { issues }) => {
            report.push("valid", false);
            for (k, i) in issues.iter().enumerate() {
                report.push(format!("issue.{k}"), i);
            }
            t.finish(report, EXIT_FAIL)
        }
        Err(e) => {
            report.push("valid", false);
            report.push("error", e);
            t.finish(report, EXIT_FAIL)
        }
    }
}

/// Solves the invariant list and persists the covering.
pub fn cmd_attractor(
    config: &Path,
    resolution: Option<f64>,
    out: Option<&Path>,
    csv: Option<&Path>,
    max_iterations: Option<usize>,
) -> CmdResult {
    let t = Timer::start();
    let mut report = Report::new("attractor");
    let (cfg, mw) = match open_system(&mut report, 0, config) {
        Ok(x) => x,
        Err(code) => return t.finish(report, code),
    };
    let h = pick_resolution(resolution, &cfg, &mw, 2f64.powi(14));
    let maxit = max_iterations.or(cfg.params.max_iterations).unwrap_or(256);
    report.push("resolution", h);
    report.push("max_iterations", maxit);

    let persist = |report: &mut Report, k: &InvariantList| -> Result<(), String> {
        for (i, s) in k.sets().iter().enumerate() {
            report.push(format!("vertex.{i}.id"), s.vertex().0);
            report.push(format!("vertex.{i}.cells"), s.len());
        }
        if let Some(p) = out {
            write_boxes(k.sets(), p).map_err(|e| format!("writing {}: {e}", p.display()))?;
            report.push("boxes", p.display());
        }
        if let Some(p) = csv {
            write_centers_csv(k.sets(), p).map_err(|e| format!("writing {}: {e}", p.display()))?;
            report.push("csv", p.display());
        }
        Ok(())
    };

    match solve_invariant_list(&mw, h, maxit) {
        Ok(k) => {
            report.push("iterations", k.iterations);
            report.push("residual", k.residual);
            report.push("error_bound", k.error_bound);
            report.push("partial", false);
            if let Err(e) = persist(&mut report, &k) {
                report.push("error", e);
                return t.finish(report, EXIT_INPUT);
            }
            t.finish(report, EXIT_OK)
        }
        Err(AttractorError::MaxIterationsExceeded {
            max_iterations,
            last_change,
            partial,
        }) => {
            report.push("iterations", max_iterations);
            report.push("residual", last_change);
            report.push("error_bound", partial.error_bound);
            report.push("partial", true);
            report.push("error", "iteration budget exhausted before convergence");
            if let Err(e) = persist(&mut report, &partial) {
                report.push("error", e);
            }
            t.finish(report, EXIT_RESOURCE)
        }
        Err(e) => {
            report.push("error", e);
            t.finish(report, EXIT_INPUT)
        }
    }
}

/// Rasterizes the covering or a chaos-game cloud to a binary pixmap.
#[allow(clippy::too_many_arguments)]
pub fn cmd_render(
    config: &Path,
    width: usize,
    height: usize,
    out: &Path,
    mode: RenderMode,
    resolution: Option<f64>,
    points: usize,
    seed: Option<u64>,
) -> CmdResult {
    let t = Timer::start();
    let mut report = Report::new("render");
    let (cfg, mw) = match open_system(&mut report, 0, config) {
        Ok(x) => x,
        Err(code) => return t.finish(report, code),
    };
    report.push("width", width);
    report.push("height", height);
    let img = match mode {
        RenderMode::Covering => {
            report.push("mode", "covering");
            let h = pick_resolution(resolution, &cfg, &mw, 2f64.powi(14));
            report.push("resolution", h);
            match solve_invariant_list(&mw, h, cfg.params.max_iterations.unwrap_or(256)) {
                Ok(k) => render_covering(k.sets(), width, height),
                Err(AttractorError::MaxIterationsExceeded { partial, .. }) => {
                    report.push("partial", true);
                    render_covering(partial.sets(), width, height)
                }
                Err(e) => {
                    report.push("error", e);
                    return t.finish(report, EXIT_INPUT);
                }
            }
        }
        RenderMode::Cloud => {
            report.push("mode", "cloud");
            let seed = seed.or(cfg.params.seed).unwrap_or(0);
            report.push("seed", seed);
            report.push("points", points);
            match chaos_game(&mw, points, 50, seed) {
                Ok(clouds) => {
                    let ambients: Vec<Aabb> = mw
                        .graph()
                        .vertices()
                        .iter()
                        .map(|&v| mw.ambient_of(v).clone())
                        .collect();
                    render_cloud(&clouds, &ambients, width, height)
                }
                Err(e) => {
                    report.push("error", e);
                    return t.finish(report, EXIT_RESOURCE);
                }
            }
        }
    };
    report.push("set_ratio", img.set_ratio());
    let file = match std::fs::File::create(out) {
        Ok(f) => f,
        Err(e) => {
            report.push("error", format!("writing {}: {e}", out.display()));
            return t.finish(report, EXIT_INPUT);
        }
    };
    if let Err(e) = img.write_ppm(std::io::BufWriter::new(file)) {
        report.push("error", format!("writing {}: {e}", out.display()));
        return t.finish(report, EXIT_INPUT);
    }
    report.push("image", out.display());
    t.finish(report, EXIT_OK)
}

fn push_classification(report: &mut Report, prefix: &str, class: &DisconnectednessReport) {
    report.push(format!("{prefix}verdict"), class.verdict);
    report.push(format!("{prefix}resolution"), class.resolution);
    for (i, g) in class.gaps.iter().enumerate() {
        report.push(format!("{prefix}gap.{i}.vertex"), g.vertex.0);
        report.push(
            format!("{prefix}gap.{i}.edges"),
            format!("{},{}", g.e.0, g.f.0),
        );
        report.push(format!("{prefix}gap.{i}.value"), g.gap);
    }
    if let Some((v, p)) = &class.witness {
        report.push(format!("{prefix}witness.vertex"), v.0);
        report.push(format!("{prefix}witness.point"), fmt_point(p));
    }
}

/// Classifies sibling edge images as disjoint or overlapping.
pub fn cmd_classify(config: &Path, resolution: Option<f64>, refinements: usize) -> CmdResult {
    let t = Timer::start();
    let mut report = Report::new("classify");
    let (cfg, mw) = match open_system(&mut report, 0, config) {
        Ok(x) => x,
        Err(code) => return t.finish(report, code),
    };
    let h = pick_resolution(resolution, &cfg, &mw, 4096.0);
    let k = match solve_invariant_list(&mw, h, cfg.params.max_iterations.unwrap_or(256)) {
        Ok(k) => k,
        Err(e) => {
            report.push("error", e);
            return t.finish(report, EXIT_RESOURCE);
        }
    };
    match classify_disconnected(&mw, &k, refinements) {
        Ok(class) => {
            push_classification(&mut report, "", &class);
            let exit = if class.verdict == Verdict::Unknown {
                EXIT_RESOURCE
            } else {
                EXIT_OK
            };
            t.finish(report, exit)
        }
        Err(e) => {
            report.push("error", e);
            t.finish(report, EXIT_RESOURCE)
        }
    }
}

fn parse_edge_list(s: &str) -> Result<Vec<EdgeId>, String> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map(EdgeId)
                .map_err(|_| format!("`{}` is not an edge id", t.trim()))
        })
        .collect()
}

/// Evaluates the coding map (address → point) or recovers addresses
/// (point → matching prefixes).
#[allow(clippy::too_many_arguments)]
pub fn cmd_code(
    config: &Path,
    address: Option<&str>,
    cycle: Option<&str>,
    point: Option<&str>,
    vertex: u32,
    depth: usize,
    eps: f64,
    resolution: Option<f64>,
) -> CmdResult {
    let t = Timer::start();
    let mut report = Report::new("code");
    let (cfg, mw) = match open_system(&mut report, 0, config) {
        Ok(x) => x,
        Err(code) => return t.finish(report, code),
    };
    let h = pick_resolution(resolution, &cfg, &mw, 2f64.powi(14));
    report.push("resolution", h);
    report.push("eps", eps);
    let k = match solve_invariant_list(&mw, h, cfg.params.max_iterations.unwrap_or(256)) {
        Ok(k) => k,
        Err(e) => {
            report.push("error", e);
            return t.finish(report, EXIT_RESOURCE);
        }
    };

    if let Some(ptext) = point {
        // Inverse coding: all depth-n prefixes passing near the point.
        report.push("mode", "point-to-addresses");
        let p = match number_list(ptext) {
            Ok(p) => p,
            Err(e) => {
                report.push("error", e);
                return t.finish(report, EXIT_INPUT);
            }
        };
        report.push("point", fmt_point(&p));
        report.push("depth", depth);
        let slack = eps + k.sets()[0].cell_diameter();
        report.push("slack", slack);
        return match address_of(&mw, &k, VertexId(vertex), &p, depth, slack) {
            Ok(paths) => {
                report.push("addresses", paths.len());
                for (i, a) in paths.iter().enumerate() {
                    report.push(format!("address.{i}"), fmt_edges(a.edges()));
                }
                t.finish(report, EXIT_OK)
            }
            Err(SymbolicError::PointNotOnAttractor) => {
                report.push("addresses", 0);
                report.push("error", "point is not on the invariant set");
                t.finish(report, EXIT_FAIL)
            }
            Err(e) => {
                report.push("error", e);
                t.finish(report, EXIT_INPUT)
            }
        };
    }

    // Forward coding: point of the (prefix + repeated cycle) address.
    report.push("mode", "address-to-point");
    let mut edges = match address.map(parse_edge_list).transpose() {
        Ok(e) => e.unwrap_or_default(),
        Err(e) => {
            report.push("error", e);
            return t.finish(report, EXIT_INPUT);
        }
    };
    match cycle.map(parse_edge_list).transpose() {
        Ok(Some(cyc)) if !cyc.is_empty() => {
            while edges.len() < depth {
                edges.extend(cyc.iter().copied());
            }
        }
        Ok(_) => {}
        Err(e) => {
            report.push("error", e);
            return t.finish(report, EXIT_INPUT);
        }
    }
    if edges.is_empty() {
        report.push("error", "give --address and/or --cycle (or --point)");
        return t.finish(report, EXIT_INPUT);
    }
    report.push("address", fmt_edges(&edges));
    report.push("depth", edges.len());
    let path = match FinitePath::new(mw.graph(), edges) {
        Ok(p) => p,
        Err(e) => {
            report.push("error", e);
            return t.finish(report, EXIT_INPUT);
        }
    };
    match coding_map(&mw, &k, &path, eps) {
        Ok(p) => {
            report.push("point", fmt_point(&p));
            let bound = composite_map(&mw, &path).c_hi() * mw.max_ambient_diameter();
            report.push("diameter_bound", bound);
            t.finish(report, EXIT_OK)
        }
        Err(SymbolicError::PrefixTooShort { required }) => {
            report.push("error", "prefix too short for the requested accuracy");
            report.push("required_depth", required);
            t.finish(report, EXIT_INPUT)
        }
        Err(e) => {
            report.push("error", e);
            t.finish(report, EXIT_INPUT)
        }
    }
}

fn push_verify(report: &mut Report, v: &crate::correspondence::VerifyReport) {
    report.push("verify.trials", v.trials);
    report.push("verify.tol", v.tol);
    report.push("verify.inner_residual", v.inner_residual);
    report.push("verify.bimodule_residual", v.bimodule_residual);
    report.push("verify.pass", v.pass);
}

fn push_refutation(report: &mut Report, prefix: &str, r: &crate::correspondence::RefutationReport) {
    for (i, row) in r.rows.iter().enumerate() {
        report.push(format!("{prefix}row.{i}.cover"), row.cover_set);
        report.push(format!("{prefix}row.{i}.edge"), row.edge.0);
        report.push(format!("{prefix}row.{i}.residual"), row.residual);
        report.push(format!("{prefix}row.{i}.samples"), row.samples);
    }
    report.push(format!("{prefix}max_residual"), r.max_residual);
    report.push(format!("{prefix}cover_gap"), r.cover_gap);
    report.push(format!("{prefix}tol"), r.tol);
    report.push(format!("{prefix}pass"), r.pass);
}

/// Decides isomorphism of two totally disconnected systems over the same
/// graph; writes the certificate on success.
#[allow(clippy::too_many_arguments)]
pub fn cmd_decide_iso(
    config1: &Path,
    config2: &Path,
    tol: Option<f64>,
    trials: usize,
    seed: Option<u64>,
    resolution: Option<f64>,
    refinements: usize,
    out: Option<&Path>,
) -> CmdResult {
    let t = Timer::start();
    let mut report = Report::new("decide-iso");
    let (cfg1, mw1) = match open_system(&mut report, 0, config1) {
        Ok(x) => x,
        Err(code) => return t.finish(report, code),
    };
    let (_, mw2) = match open_system(&mut report, 1, config2) {
        Ok(x) => x,
        Err(code) => return t.finish(report, code),
    };
    if mw1.dim() != mw2.dim() {
        report.push("error", "systems have different ambient dimensions");
        return t.finish(report, EXIT_INPUT);
    }
    let opts = DecideOptions {
        tol: tol.or(cfg1.params.tol).unwrap_or(1e-6),
        trials,
        seed: seed.or(cfg1.params.seed).unwrap_or(0),
        resolution,
        max_refinements: refinements,
    };
    report.push("tol", opts.tol);
    report.push("trials", opts.trials);
    report.push("seed", opts.seed);

    match decide_iso_totally_disconnected(&mw1, &mw2, &opts) {
        Ok(IsoOutcome::Isomorphic {
            certificate,
            report: vreport,
            depth,
            resolutions,
        }) => {
            report.push("outcome", "isomorphic");
            report.push("certificate.depth", depth);
            report.push("certificate.grid1", resolutions.0);
            report.push("certificate.grid2", resolutions.1);
            push_verify(&mut report, &vreport);
            if let Some(p) = out {
                if let Err(e) = write_certificate(&certificate, resolutions.0, resolutions.1, p) {
                    report.push("error", format!("writing {}: {e}", p.display()));
                    return t.finish(report, EXIT_INPUT);
                }
                report.push("certificate.path", p.display());
            }
            let exit = if vreport.pass { EXIT_OK } else { EXIT_FAIL };
            t.finish(report, exit)
        }
        Ok(IsoOutcome::NotIsomorphic {
            overlapping_system,
            witness_vertex,
            witness,
            reports,
        }) => {
            report.push("outcome", "not-isomorphic");
            report.push("overlapping_system", overlapping_system);
            report.push("witness.vertex", witness_vertex.0);
            report.push("witness.point", fmt_point(&witness));
            push_classification(&mut report, "class1.", &reports.0);
            push_classification(&mut report, "class2.", &reports.1);
            t.finish(report, EXIT_FAIL)
        }
        Ok(IsoOutcome::Undecided {
            refutations,
            note,
            reports,
        }) => {
            report.push("outcome", "undecided");
            report.push("note", note);
            push_classification(&mut report, "class1.", &reports.0);
            push_classification(&mut report, "class2.", &reports.1);
            for (i, (sigma, refutation)) in refutations.iter().enumerate() {
                report.push(format!("refutation.{i}.sigma"), fmt_edges(sigma));
                push_refutation(&mut report, &format!("refutation.{i}."), refutation);
            }
            t.finish(report, EXIT_RESOURCE)
        }
        Err(CorrError::GraphMismatch) => {
            report.push("error", "systems live on different directed graphs");
            t.finish(report, EXIT_INPUT)
        }
        Err(CorrError::NotTotallyDisconnected(m)) => {
            report.push("outcome", "unknown");
            report.push("error", m);
            t.finish(report, EXIT_RESOURCE)
        }
        Err(CorrError::Attractor(e)) => {
            report.push("error", e);
            t.finish(report, EXIT_RESOURCE)
        }
        Err(e) => {
            report.push("error", e);
            t.finish(report, EXIT_INPUT)
        }
    }
}

/// Re-checks a stored certificate: residual refutation rows, structural
/// validation, and randomized verification of the induced map.
pub fn cmd_verify_cert(
    config1: &Path,
    config2: &Path,
    cert_path: &Path,
    tol: Option<f64>,
    trials: usize,
    seed: Option<u64>,
) -> CmdResult {
    let t = Timer::start();
    let mut report = Report::new("verify-cert");
    let (cfg1, mw1) = match open_system(&mut report, 0, config1) {
        Ok(x) => x,
        Err(code) => return t.finish(report, code),
    };
    let (_, mw2) = match open_system(&mut report, 1, config2) {
        Ok(x) => x,
        Err(code) => return t.finish(report, code),
    };
    if let Err(e) = push_input_digest(&mut report, 2, cert_path) {
        report.push("error", format!("cannot read {}: {e}", cert_path.display()));
        return t.finish(report, EXIT_INPUT);
    }
    if !mw1.graph().same_shape(mw2.graph()) {
        report.push("error", "systems live on different directed graphs");
        return t.finish(report, EXIT_INPUT);
    }
    if mw1.dim() != mw2.dim() {
        report.push("error", "systems have different ambient dimensions");
        return t.finish(report, EXIT_INPUT);
    }
    let (cert, grid1, grid2) = match load_certificate(cert_path, &mw1, &mw2) {
        Ok(x) => x,
        Err(CertLoadError::Parse(m)) => {
            report.push("error", m);
            return t.finish(report, EXIT_INPUT);
        }
        Err(CertLoadError::Resource(m)) => {
            report.push("error", m);
            return t.finish(report, EXIT_RESOURCE);
        }
    };
    let tol = tol.or(cfg1.params.tol).unwrap_or(1e-9);
    let seed = seed.or(cfg1.params.seed).unwrap_or(0);
    report.push("tol", tol);
    report.push("grid1", grid1.resolution());
    report.push("grid2", grid2.resolution());

    let refutation = refute_certificate(&cert, &mw1, &mw2, &grid1, &grid2, tol);
    push_refutation(&mut report, "refutation.", &refutation);

    match build_v(&cert, &mw1, &mw2, &grid1, &grid2) {
        Ok(vmap) => {
            report.push("overlapping_cover", vmap.overlapping_cover);
            let s1 = CorrSpace::new(&mw1, &grid1, 1);
            let s2 = CorrSpace::new(&mw2, &grid2, 1);
            let vreport = verify_isomorphism(&vmap, &s1, &s2, trials, tol, seed);
            push_verify(&mut report, &vreport);
            let pass = refutation.pass && vreport.pass;
            report.push("pass", pass);
            t.finish(report, if pass { EXIT_OK } else { EXIT_FAIL })
        }
        Err(e) => {
            report.push("build_error", e);
            report.push("pass", false);
            t.finish(report, EXIT_FAIL)
        }
    }
}

/// Reads `vertex,x[,y[,z]],value` sample rows onto the covering grid.
fn read_a0_csv(path: &Path, mw: &MWGraph, k: &InvariantList) -> Result<Vec<Vec<f64>>, String> {
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    let g = mw.graph();
    let dim = mw.dim();
    let mut values: Vec<Vec<f64>> = k.sets().iter().map(|s| vec![0.0; s.len()]).collect();
    // Cell -> position maps, one per vertex, in covering order.
    let index: Vec<std::collections::BTreeMap<Cell, usize>> = k
        .sets()
        .iter()
        .map(|s| s.cells().enumerate().map(|(i, c)| (*c, i)).collect())
        .collect();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || (i == 0 && line.starts_with("vertex")) {
            continue;
        }
        let parts: Vec<&str> = line.split(',').collect();
        if parts.len() != dim + 2 {
            return Err(format!(
                "line {}: expected vertex,{} coordinates,value",
                i + 1,
                dim
            ));
        }
        let v: u32 = parts[0]
            .trim()
            .parse()
            .map_err(|_| format!("line {}: bad vertex id", i + 1))?;
        let vi = g
            .vertex_index(VertexId(v))
            .ok_or_else(|| format!("line {}: unknown vertex {v}", i + 1))?;
        let p: Result<Vec<f64>, _> = parts[1..=dim].iter().map(|t| t.trim().parse()).collect();
        let p = p.map_err(|_| format!("line {}: bad coordinates", i + 1))?;
        let value: f64 = parts[dim + 1]
            .trim()
            .parse()
            .map_err(|_| format!("line {}: bad value", i + 1))?;
        let (cell, dist) = k.sets()[vi]
            .nearest_cell(&p)
            .map_err(|e| format!("line {}: {e}", i + 1))?;
        if dist > k.sets()[vi].cell_diameter() {
            return Err(format!(
                "line {}: sample point is {dist:.3e} away from the covering",
                i + 1
            ));
        }
        values[vi][index[vi][&cell]] = value;
    }
    Ok(values)
}

/// Builds an aperiodicity witness bump and certifies its inequalities.
pub fn cmd_witness(
    config: &Path,
    n0: usize,
    eps: f64,
    a0: Option<&Path>,
    resolution: Option<f64>,
) -> CmdResult {
    let t = Timer::start();
    let mut report = Report::new("witness");
    let (cfg, mw) = match open_system(&mut report, 0, config) {
        Ok(x) => x,
        Err(code) => return t.finish(report, code),
    };
    if n0 == 0 || eps <= 0.0 || eps >= 1.0 {
        report.push("error", "need n0 >= 1 and 0 < eps < 1");
        return t.finish(report, EXIT_INPUT);
    }
    let h = pick_resolution(resolution, &cfg, &mw, 2f64.powi(14));
    report.push("resolution", h);
    report.push("n0", n0);
    report.push("eps", eps);
    let k = match solve_invariant_list(&mw, h, cfg.params.max_iterations.unwrap_or(256)) {
        Ok(k) => k,
        Err(e) => {
            report.push("error", e);
            return t.finish(report, EXIT_RESOURCE);
        }
    };
    let samples = match a0 {
        None => {
            report.push("a0", "constant 1");
            k.sets().iter().map(|s| vec![1.0; s.len()]).collect()
        }
        Some(path) => match read_a0_csv(path, &mw, &k) {
            Ok(v) => {
                report.push("a0", path.display());
                v
            }
            Err(e) => {
                report.push("error", e);
                return t.finish(report, EXIT_INPUT);
            }
        },
    };
    match aperiodicity_witness(&mw, &k, &samples, n0, eps) {
        Ok((bump, w)) => {
            report.push("bump.vertex", bump.vertex.0);
            report.push("bump.center", fmt_point(&bump.center));
            report.push("bump.radius", bump.radius);
            report.push("sup_sandwich", w.sup_sandwich);
            report.push("max_shift_product", w.max_shift_product);
            report.push("paths_checked", w.paths_checked);
            report.push("delta1", w.delta1);
            report.push("delta2", w.delta2);
            report.push("min_ball_separation", w.min_ball_separation);
            report.push("clearance", w.clearance);
            let pass = w.sup_sandwich >= 1.0 - eps && w.max_shift_product == 0.0;
            report.push("pass", pass);
            t.finish(report, if pass { EXIT_OK } else { EXIT_FAIL })
        }
        Err(e @ StructureError::NoQualifyingCenter)
        | Err(e @ StructureError::ResolutionTooCoarse { .. }) => {
            report.push("error", e);
            report.push("pass", false);
            t.finish(report, EXIT_FAIL)
        }
        Err(e @ StructureError::InvalidFunction(_)) => {
            report.push("error", e);
            t.finish(report, EXIT_INPUT)
        }
        Err(e) => {
            report.push("error", e);
            t.finish(report, EXIT_RESOURCE)
        }
    }
}
