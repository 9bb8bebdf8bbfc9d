//! Line-oriented system description files (`.cfg`).
//!
//! A description has up to four sections. `[system]` carries a free-form
//! name and an optional dimension check; `[vertices]` lists one ambient box
//! per vertex; `[edges]` lists one affine map per edge together with its
//! endpoints; `[params]` holds default run parameters that command-line
//! flags may override. No nesting, one statement per line, `#` starts a
//! comment — the format is meant to be written by hand and diffed in tests.
//!
//! ```text
//! [system]
//! name = cantor-thirds
//!
//! [vertices]
//! vertex 0 box [0, 1]
//!
//! [edges]
//! edge 0 from 0 to 0 matrix [1/3] offset [0]
//! edge 1 from 0 to 0 matrix [1/3] offset [2/3]
//!
//! [params]
//! resolution = 3^-6
//! ```
//!
//! Numeric literals may be written exactly: plain floats (`0.25`, `1e-9`),
//! fractions (`2/3`), integer powers (`3^-6`), and square roots
//! (`sqrt(3)`, `sqrt(3)/2`), all with an optional leading minus. Exact
//! forms matter because grids and acceptance oracles are sensitive to the
//! last ulp of constants like √3/2.
//!
//! Parsing never stops at the first defect: every malformed line is
//! reported, addressed by line number and by the field it belongs to
//! (`edge 2 matrix`, `vertex 1 box`, …). A parsed [`SystemConfig`] still
//! has to pass [`validate_mw`] — syntax and semantics fail separately.

use std::fmt;
use std::path::Path;

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

use crate::geometry::Aabb;
use crate::graph::{EdgeId, RawGraph, VertexId};
use crate::mw::{validate_mw, MWGraph, MwError, RawMwSystem};

/// One malformed line or field, addressed so an editor can jump to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseIssue {
    /// 1-based line number in the source text.
    pub line: usize,
    /// What the line was defining (`edge 2 matrix`, `params resolution`, …).
    pub field: String,
    pub message: String,
}

impl fmt::Display for ParseIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}: {}", self.line, self.field, self.message)
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{} parse error(s): {}", issues.len(),
            issues.iter().map(|i| i.to_string()).collect::<Vec<_>>().join("; "))]
    Parse { issues: Vec<ParseIssue> },
    #[error(transparent)]
    Invalid(#[from] MwError),
}

/// Default run parameters from the `[params]` section; every field is
/// optional and command-line flags take precedence.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunParams {
    pub resolution: Option<f64>,
    pub tol: Option<f64>,
    pub seed: Option<u64>,
    pub max_iterations: Option<usize>,
}

/// A parsed (but not yet validated) system description.
#[derive(Debug, Clone)]
pub struct SystemConfig {
    pub name: Option<String>,
    pub raw: RawMwSystem,
    pub params: RunParams,
}

impl SystemConfig {
    /// Runs full semantic validation and returns the usable system.
    pub fn build(&self) -> Result<MWGraph, MwError> {
        validate_mw(&self.raw)
    }
}

/// Reads and parses a description file.
pub fn load_config(path: &Path) -> Result<SystemConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_config(&text).map_err(|issues| ConfigError::Parse { issues })
}

/// Parses a description from text, reporting every defect at once.
pub fn parse_config(text: &str) -> Result<SystemConfig, Vec<ParseIssue>> {
    Parser::new(text).run()
}

/// Parses one numeric literal: plain float, `a/b`, `b^k`, `sqrt(n)`, or
/// `sqrt(n)/m`, each with an optional leading minus.
pub fn parse_number(s: &str) -> Result<f64, String> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix('-') {
        // A lone leading minus distributes over every exact form.
        return parse_unsigned(rest.trim()).map(|x| -x);
    }
    parse_unsigned(s)
}

fn parse_unsigned(s: &str) -> Result<f64, String> {
    if s.is_empty() {
        return Err("empty number".into());
    }
    if let Some(rest) = s.strip_prefix("sqrt(") {
        let Some(close) = rest.find(')') else {
            return Err(format!("unterminated sqrt in `{s}`"));
        };
        let inner: f64 = plain(&rest[..close])?;
        if inner < 0.0 {
            return Err(format!("sqrt of negative number in `{s}`"));
        }
        let tail = rest[close + 1..].trim();
        let denom = match tail.strip_prefix('/') {
            None if tail.is_empty() => 1.0,
            None => return Err(format!("trailing `{tail}` after sqrt")),
            Some(d) => {
                let d = plain(d.trim())?;
                if d == 0.0 {
                    return Err(format!("division by zero in `{s}`"));
                }
                d
            }
        };
        return Ok(inner.sqrt() / denom);
    }
    if let Some((base, exp)) = s.split_once('^') {
        let base = plain(base.trim())?;
        let exp: i32 = exp
            .trim()
            .parse()
            .map_err(|_| format!("exponent `{}` is not an integer", exp.trim()))?;
        return Ok(base.powi(exp));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = plain(num.trim())?;
        let den = plain(den.trim())?;
        if den == 0.0 {
            return Err(format!("division by zero in `{s}`"));
        }
        return Ok(num / den);
    }
    plain(s)
}

fn plain(s: &str) -> Result<f64, String> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| format!("`{}` is not a number", s.trim()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    System,
    Vertices,
    Edges,
    Params,
}

/// Parsed edge declaration: id, source, range, linear part, offset.
type EdgeDecl = (EdgeId, VertexId, VertexId, DMatrix<f64>, DVector<f64>);

struct Parser<'t> {
    lines: Vec<(usize, &'t str)>,
    issues: Vec<ParseIssue>,
    name: Option<String>,
    declared_dim: Option<usize>,
    vertices: Vec<(VertexId, Aabb)>,
    edges: Vec<EdgeDecl>,
    params: RunParams,
}

impl<'t> Parser<'t> {
    fn new(text: &'t str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| {
                // Strip comments; '#' cannot occur inside any literal.
                let body = l.split('#').next().unwrap_or("").trim();
                (i + 1, body)
            })
            .filter(|(_, l)| !l.is_empty())
            .collect();
        Parser {
            lines,
            issues: Vec::new(),
            name: None,
            declared_dim: None,
            vertices: Vec::new(),
            edges: Vec::new(),
            params: RunParams::default(),
        }
    }

    fn issue(&mut self, line: usize, field: impl Into<String>, message: impl Into<String>) {
        self.issues.push(ParseIssue {
            line,
            field: field.into(),
            message: message.into(),
        });
    }

    fn run(mut self) -> Result<SystemConfig, Vec<ParseIssue>> {
        let mut section = Section::None;
        let lines = std::mem::take(&mut self.lines);
        for (ln, body) in lines {
            if let Some(h) = body.strip_prefix('[') {
                section = match h.strip_suffix(']').map(str::trim) {
                    Some("system") => Section::System,
                    Some("vertices") => Section::Vertices,
                    Some("edges") => Section::Edges,
                    Some("params") => Section::Params,
                    _ => {
                        self.issue(ln, "section", format!("unknown section header `{body}`"));
                        Section::None
                    }
                };
                continue;
            }
            match section {
                Section::System => self.system_line(ln, body),
                Section::Vertices => self.vertex_line(ln, body),
                Section::Edges => self.edge_line(ln, body),
                Section::Params => self.param_line(ln, body),
                Section::None => self.issue(ln, "section", "statement before any section header"),
            }
        }

        if self.vertices.is_empty() && self.issues.is_empty() {
            self.issue(0, "vertices", "no vertices declared");
        }
        if let Some(d) = self.declared_dim {
            let bad = self
                .vertices
                .iter()
                .find(|(_, b)| b.dim() != d)
                .map(|(v, b)| (*v, b.dim()));
            if let Some((v, got)) = bad {
                self.issue(
                    0,
                    format!("vertex {} box", v.0),
                    format!("declared dim {d} but box has {got} axes"),
                );
            }
        }
        if !self.issues.is_empty() {
            return Err(self.issues);
        }

        // Maps must line up with dense edge ids; sorting makes declaration
        // order irrelevant, and validation reports any id gaps.
        self.edges.sort_by_key(|e| e.0);
        let raw = RawMwSystem {
            graph: RawGraph {
                vertices: self.vertices.iter().map(|(v, _)| *v).collect(),
                edges: self
                    .edges
                    .iter()
                    .map(|(e, s, r, _, _)| (*e, *s, *r))
                    .collect(),
            },
            ambient: self.vertices.into_iter().map(|(_, b)| b).collect(),
            maps: self
                .edges
                .into_iter()
                .map(|(_, _, _, m, b)| (m, b))
                .collect(),
        };
        Ok(SystemConfig {
            name: self.name,
            raw,
            params: self.params,
        })
    }

    fn system_line(&mut self, ln: usize, body: &str) {
        let Some((key, value)) = body.split_once('=') else {
            self.issue(ln, "system", "expected `key = value`");
            return;
        };
        match (key.trim(), value.trim()) {
            ("name", v) => self.name = Some(v.to_string()),
            ("dim", v) => match v.parse::<usize>() {
                Ok(d) if (1..=3).contains(&d) => self.declared_dim = Some(d),
                _ => self.issue(
                    ln,
                    "system dim",
                    format!("`{v}` is not a dimension in 1..=3"),
                ),
            },
            (k, _) => self.issue(ln, "system", format!("unknown key `{k}`")),
        }
    }

    /// `vertex <id> box [lo, hi] ([lo, hi] per further axis)`
    fn vertex_line(&mut self, ln: usize, body: &str) {
        let Some(rest) = body.strip_prefix("vertex ") else {
            self.issue(
                ln,
                "vertices",
                format!("expected `vertex <id> box …`, got `{body}`"),
            );
            return;
        };
        let rest = rest.trim_start();
        let Some((id_str, rest)) = rest.split_once(char::is_whitespace) else {
            self.issue(ln, "vertices", "missing box after vertex id");
            return;
        };
        let field = format!("vertex {} box", id_str.trim());
        let Ok(id) = id_str.trim().parse::<u32>() else {
            self.issue(
                ln,
                "vertices",
                format!("vertex id `{}` is not an integer", id_str.trim()),
            );
            return;
        };
        let Some(spec) = rest.trim().strip_prefix("box") else {
            self.issue(ln, field, "expected `box [lo, hi] …`");
            return;
        };
        let groups = match bracket_groups(spec) {
            Ok(g) => g,
            Err(m) => return self.issue(ln, field, m),
        };
        if groups.is_empty() || groups.len() > 3 {
            return self.issue(
                ln,
                field,
                format!("expected 1 to 3 axis ranges, got {}", groups.len()),
            );
        }
        let mut lo = Vec::new();
        let mut hi = Vec::new();
        for g in &groups {
            let nums = match number_list(g) {
                Ok(n) => n,
                Err(m) => return self.issue(ln, field, m),
            };
            if nums.len() != 2 {
                return self.issue(
                    ln,
                    field,
                    format!("axis range `[{g}]` needs exactly lo, hi"),
                );
            }
            lo.push(nums[0]);
            hi.push(nums[1]);
        }
        match Aabb::new(lo, hi) {
            Ok(b) => {
                if self.vertices.iter().any(|(v, _)| v.0 == id) {
                    self.issue(ln, field, "vertex declared twice");
                } else {
                    self.vertices.push((VertexId(id), b));
                }
            }
            Err(e) => self.issue(ln, field, e.to_string()),
        }
    }

    /// `edge <id> from <v> to <w> matrix [r00, r01; r10, r11] offset [b0, b1]`
    fn edge_line(&mut self, ln: usize, body: &str) {
        let Some(rest) = body.strip_prefix("edge ") else {
            self.issue(
                ln,
                "edges",
                format!("expected `edge <id> from … to … matrix … offset …`, got `{body}`"),
            );
            return;
        };
        let mut toks = rest.split_whitespace();
        let Some(id_str) = toks.next() else {
            self.issue(ln, "edges", "missing edge id");
            return;
        };
        let Ok(id) = id_str.parse::<u32>() else {
            self.issue(ln, "edges", format!("edge id `{id_str}` is not an integer"));
            return;
        };
        let field = |part: &str| format!("edge {id} {part}");

        let endpoint = |toks: &mut std::str::SplitWhitespace, kw: &str| -> Result<u32, String> {
            match (toks.next(), toks.next()) {
                (Some(k), Some(v)) if k == kw => v
                    .parse::<u32>()
                    .map_err(|_| format!("`{v}` is not a vertex id")),
                _ => Err(format!("expected `{kw} <vertex>`")),
            }
        };
        let src = match endpoint(&mut toks, "from") {
            Ok(v) => v,
            Err(m) => return self.issue(ln, field("from"), m),
        };
        let rng = match endpoint(&mut toks, "to") {
            Ok(v) => v,
            Err(m) => return self.issue(ln, field("to"), m),
        };

        // The remainder holds two bracketed payloads introduced by keywords.
        let tail: String = toks.collect::<Vec<_>>().join(" ");
        let Some(tail) = tail.trim().strip_prefix("matrix") else {
            return self.issue(ln, field("matrix"), "expected `matrix [...]`");
        };
        let (mat_group, tail) = match take_bracket(tail) {
            Ok(x) => x,
            Err(m) => return self.issue(ln, field("matrix"), m),
        };
        let Some(tail) = tail.trim().strip_prefix("offset") else {
            return self.issue(ln, field("offset"), "expected `offset [...]`");
        };
        let (off_group, tail) = match take_bracket(tail) {
            Ok(x) => x,
            Err(m) => return self.issue(ln, field("offset"), m),
        };
        if !tail.trim().is_empty() {
            return self.issue(ln, field("offset"), format!("trailing `{}`", tail.trim()));
        }

        let rows: Vec<&str> = mat_group.split(';').collect();
        let mut entries = Vec::new();
        let mut ncols = None;
        for row in &rows {
            let nums = match number_list(row) {
                Ok(n) => n,
                Err(m) => return self.issue(ln, field("matrix"), m),
            };
            if *ncols.get_or_insert(nums.len()) != nums.len() {
                return self.issue(ln, field("matrix"), "rows have different lengths");
            }
            entries.extend(nums);
        }
        let ncols = ncols.unwrap_or(0);
        if ncols == 0 {
            return self.issue(ln, field("matrix"), "matrix is empty");
        }
        let offset = match number_list(&off_group) {
            Ok(n) => n,
            Err(m) => return self.issue(ln, field("offset"), m),
        };
        if self.edges.iter().any(|(e, ..)| e.0 == id) {
            return self.issue(ln, field("id"), "edge declared twice");
        }
        self.edges.push((
            EdgeId(id),
            VertexId(src),
            VertexId(rng),
            DMatrix::from_row_slice(rows.len(), ncols, &entries),
            DVector::from_vec(offset),
        ));
    }

    fn param_line(&mut self, ln: usize, body: &str) {
        let Some((key, value)) = body.split_once('=') else {
            self.issue(ln, "params", "expected `key = value`");
            return;
        };
        let (key, value) = (key.trim(), value.trim());
        let field = format!("params {key}");
        match key {
            "resolution" | "tol" => match parse_number(value) {
                Ok(x) if x > 0.0 => {
                    if key == "resolution" {
                        self.params.resolution = Some(x);
                    } else {
                        self.params.tol = Some(x);
                    }
                }
                Ok(_) => self.issue(ln, field, "must be positive"),
                Err(m) => self.issue(ln, field, m),
            },
            "seed" => match value.parse::<u64>() {
                Ok(s) => self.params.seed = Some(s),
                Err(_) => self.issue(ln, field, format!("`{value}` is not an unsigned integer")),
            },
            "max_iterations" => match value.parse::<usize>() {
                Ok(n) if n > 0 => self.params.max_iterations = Some(n),
                _ => self.issue(ln, field, format!("`{value}` is not a positive integer")),
            },
            _ => self.issue(ln, field, "unknown parameter"),
        }
    }
}

/// Splits `"[a, b] [c, d]"` into the bracket contents, rejecting stray text.
pub(crate) fn bracket_groups(s: &str) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let (group, tail) = take_bracket(rest)?;
        out.push(group);
        rest = tail.trim();
    }
    Ok(out)
}

/// Takes one leading `[...]` group, returning its contents and the tail.
pub(crate) fn take_bracket(s: &str) -> Result<(String, &str), String> {
    let s = s.trim_start();
    let Some(rest) = s.strip_prefix('[') else {
        return Err(format!(
            "expected `[`, got `{}`",
            s.chars().take(12).collect::<String>()
        ));
    };
    let Some(close) = rest.find(']') else {
        return Err("unterminated `[`".into());
    };
    Ok((rest[..close].to_string(), &rest[close + 1..]))
}

pub(crate) fn number_list(s: &str) -> Result<Vec<f64>, String> {
    s.split(',').map(parse_number).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const CANTOR: &str = "\
# Two maps with ratio 1/3 on the unit interval.
[system]
name = cantor-thirds
dim = 1

[vertices]
vertex 0 box [0, 1]

[edges]
edge 0 from 0 to 0 matrix [1/3] offset [0]
edge 1 from 0 to 0 matrix [1/3] offset [2/3]

[params]
resolution = 3^-6
seed = 7
";

    #[test]
    fn parses_and_validates_a_complete_file() {
        let cfg = parse_config(CANTOR).unwrap();
        assert_eq!(cfg.name.as_deref(), Some("cantor-thirds"));
        assert_eq!(cfg.params.resolution, Some(3.0f64.powi(-6)));
        assert_eq!(cfg.params.seed, Some(7));
        assert_eq!(cfg.params.tol, None);
        let mw = cfg.build().unwrap();
        assert_eq!(mw.graph().edge_count(), 2);
        assert_eq!(mw.map_of(EdgeId(1)).apply(&[1.0])[0], 1.0);
        let (lo, hi) = (mw.map_of(EdgeId(0)).c_lo(), mw.map_of(EdgeId(0)).c_hi());
        assert_eq!((lo, hi), (1.0 / 3.0, 1.0 / 3.0));
    }

    #[test]
    fn exact_literal_forms_evaluate_exactly() {
        assert_eq!(parse_number("1/3").unwrap(), 1.0 / 3.0);
        assert_eq!(parse_number("-1/2").unwrap(), -0.5);
        assert_eq!(parse_number("3^-6").unwrap(), 3.0f64.powi(-6));
        assert_eq!(parse_number("2^10").unwrap(), 1024.0);
        assert_eq!(parse_number("sqrt(3)").unwrap(), 3.0f64.sqrt());
        assert_eq!(parse_number("sqrt(3)/2").unwrap(), 3.0f64.sqrt() / 2.0);
        assert_eq!(parse_number("-sqrt(2)/4").unwrap(), -(2.0f64.sqrt()) / 4.0);
        assert_eq!(parse_number("1e-9").unwrap(), 1e-9);
        assert_eq!(parse_number(" 0.25 ").unwrap(), 0.25);
    }

    #[test]
    fn bad_literals_are_rejected_with_reasons() {
        for bad in ["", "sqrt(", "sqrt(-1)", "1/0", "2^x", "abc", "1/3/4"] {
            assert!(parse_number(bad).is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn two_dimensional_boxes_and_matrices_parse() {
        let text = "\
[vertices]
vertex 0 box [0, 1] [0, sqrt(3)/2]
[edges]
edge 0 from 0 to 0 matrix [1/2, 0; 0, 1/2] offset [1/4, sqrt(3)/4]
edge 1 from 0 to 0 matrix [1/2, 0; 0, 1/2] offset [0, 0]
edge 2 from 0 to 0 matrix [1/2, 0; 0, 1/2] offset [1/2, 0]
";
        let cfg = parse_config(text).unwrap();
        let mw = cfg.build().unwrap();
        assert_eq!(mw.dim(), 2);
        assert_eq!(mw.ambient_of(VertexId(0)).hi()[1], 3.0f64.sqrt() / 2.0);
        let p = mw.map_of(EdgeId(0)).apply(&[0.0, 0.0]);
        assert_eq!(p, vec![0.25, 3.0f64.sqrt() / 4.0]);
    }

    #[test]
    fn malformed_matrix_row_names_the_edge() {
        let text = "\
[vertices]
vertex 0 box [0, 1]
[edges]
edge 0 from 0 to 0 matrix [1/3] offset [0]
edge 1 from 0 to 0 matrix [oops] offset [2/3]
";
        let issues = parse_config(text).unwrap_err();
        assert_eq!(issues.len(), 1);
        assert_eq!(issues[0].field, "edge 1 matrix");
        assert_eq!(issues[0].line, 5);
        assert!(issues[0].message.contains("oops"));
    }

    #[test]
    fn every_defective_line_is_reported_not_just_the_first() {
        let text = "\
[vertices]
vertex 0 box [0]
vertex zero box [0, 1]
[edges]
edge 0 from 0 matrix [1/3] offset [0]
[params]
resolution = -2
unknown = 1
";
        let issues = parse_config(text).unwrap_err();
        assert_eq!(issues.len(), 5);
        let fields: Vec<&str> = issues.iter().map(|i| i.field.as_str()).collect();
        assert_eq!(
            fields,
            vec![
                "vertex 0 box",
                "vertices",
                "edge 0 to",
                "params resolution",
                "params unknown"
            ]
        );
        // Addressed to their source lines.
        assert_eq!(issues[0].line, 2);
        assert_eq!(issues[2].line, 5);
    }

    #[test]
    fn ratio_one_parses_but_fails_validation() {
        let text = "\
[vertices]
vertex 0 box [0, 1]
[edges]
edge 0 from 0 to 0 matrix [1.0] offset [0]
edge 1 from 0 to 0 matrix [1/3] offset [2/3]
";
        let cfg = parse_config(text).unwrap();
        let err = cfg.build().unwrap_err();
        let MwError::Invalid { issues } = err else {
            panic!("expected Invalid, got {err:?}");
        };
        assert!(issues.iter().any(
            |i| matches!(i, crate::mw::MwIssue::NotContraction { edge, .. } if *edge == EdgeId(0))
        ));
    }

    #[test]
    fn dim_declaration_must_match_the_boxes() {
        let text = "\
[system]
dim = 2
[vertices]
vertex 0 box [0, 1]
[edges]
edge 0 from 0 to 0 matrix [1/3] offset [0]
";
        let issues = parse_config(text).unwrap_err();
        assert_eq!(issues.len(), 1);
        assert!(issues[0].message.contains("declared dim 2"));
    }

    #[test]
    fn comments_blank_lines_and_declaration_order_are_immaterial() {
        let text = "
[edges]
edge 1 from 0 to 0 matrix [1/3] offset [2/3]   # right piece
edge 0 from 0 to 0 matrix [1/3] offset [0]

[vertices]
vertex 0 box [0, 1]  # ambient
";
        let cfg = parse_config(text).unwrap();
        let mw = cfg.build().unwrap();
        // Maps are keyed by id, not declaration order.
        assert_eq!(mw.map_of(EdgeId(0)).apply(&[0.0])[0], 0.0);
        assert_eq!(mw.map_of(EdgeId(1)).apply(&[0.0])[0], 2.0 / 3.0);
    }

    proptest! {
        /// Fractions of small integers parse to the exact float quotient.
        #[test]
        fn fractions_parse_exactly(n in -999i32..1000, d in 1i32..1000) {
            let s = format!("{n}/{d}");
            prop_assert_eq!(parse_number(&s).unwrap(), n as f64 / d as f64);
        }

        /// Powers parse to the exact `powi` value.
        #[test]
        fn powers_parse_exactly(b in 2u32..10, k in -20i32..21) {
            let s = format!("{b}^{k}");
            prop_assert_eq!(parse_number(&s).unwrap(), (b as f64).powi(k));
        }

        /// Whatever `Display` prints for a float parses back to the same float.
        #[test]
        fn plain_floats_round_trip(x in prop::num::f64::NORMAL) {
            let s = format!("{x}");
            prop_assert_eq!(parse_number(&s).unwrap(), x);
        }
    }
}
