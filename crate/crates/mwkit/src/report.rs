//! Structured command reports (`.report`).
//!
//! A report is an ordered list of `key = value` lines: the order is exactly
//! the insertion order, values are single-line strings, and the rendered
//! text parses back to an equal report. Commands always start with the
//! `command` key, follow with one digest entry per input file (so a report
//! pins down precisely what it was computed from), and end with `timing_ms`.
//! Everything in between is command-specific; repeated table rows use dotted
//! indexed keys (`gap.0.edges`, `gap.0.value`, …).

use std::fmt;
use std::path::Path;

use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReportError {
    #[error("line {line}: expected `key = value`, got `{text}`")]
    Malformed { line: usize, text: String },
    #[error("key `{0}` contains whitespace or `=`")]
    BadKey(String),
    #[error("value for `{0}` contains a newline")]
    BadValue(String),
}

/// An ordered `key = value` document.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Report {
    entries: Vec<(String, String)>,
}

impl Report {
    /// Starts a report for a command; `command` is always the first key.
    pub fn new(command: &str) -> Report {
        let mut r = Report::default();
        r.push("command", command);
        r
    }

    /// Appends one entry. Panics on keys with spaces or `=` and on values
    /// with newlines — reports are built from trusted code, not user input,
    /// so a violation is a bug in the caller.
    pub fn push(&mut self, key: impl Into<String>, value: impl fmt::Display) {
        let key = key.into();
        let value = value.to_string();
        assert!(
            !key.is_empty() && !key.contains(|c: char| c.is_whitespace() || c == '='),
            "bad report key {key:?}"
        );
        assert!(!value.contains('\n'), "value for {key} contains a newline");
        self.entries.push((key, value));
    }

    /// First value stored under `key`, if any.
    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    /// All `(key, value)` pairs in insertion order.
    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }

    /// Number of entries whose key starts with `prefix`.
    pub fn count_prefix(&self, prefix: &str) -> usize {
        self.entries
            .iter()
            .filter(|(k, _)| k.starts_with(prefix))
            .count()
    }

    /// Renders the report as `key = value` lines.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.entries {
            out.push_str(k);
            out.push_str(" = ");
            out.push_str(v);
            out.push('\n');
        }
        out
    }

    /// Parses rendered text back into a report. Inverse of [`render`]:
    /// `parse(render(r)) == r` for every report built through [`push`].
    ///
    /// [`render`]: Report::render
    /// [`push`]: Report::push
    pub fn parse(text: &str) -> Result<Report, ReportError> {
        let mut entries = Vec::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once(" = ") else {
                return Err(ReportError::Malformed {
                    line: i + 1,
                    text: line.to_string(),
                });
            };
            if k.is_empty() || k.contains(|c: char| c.is_whitespace() || c == '=') {
                return Err(ReportError::BadKey(k.to_string()));
            }
            entries.push((k.to_string(), v.to_string()));
        }
        Ok(Report { entries })
    }

    /// Writes the rendered report to a file.
    pub fn write_to(&self, path: &Path) -> std::io::Result<()> {
        std::fs::write(path, self.render())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Hex SHA-256 of a byte string.
pub fn digest_bytes(bytes: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(bytes);
    let out = h.finalize();
    let mut s = String::with_capacity(64);
    for b in out {
        s.push_str(&format!("{b:02x}"));
    }
    s
}

/// Appends `input.<i>.path` and `input.<i>.sha256` entries for a file, so
/// the report pins down the exact inputs it was computed from.
pub fn push_input_digest(report: &mut Report, index: usize, path: &Path) -> std::io::Result<()> {
    let bytes = std::fs::read(path)?;
    report.push(format!("input.{index}.path"), path.display());
    report.push(format!("input.{index}.sha256"), digest_bytes(&bytes));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn renders_in_insertion_order_and_round_trips() {
        let mut r = Report::new("classify");
        r.push("verdict", "disjoint");
        r.push("gap.0.edges", "0,1");
        r.push("gap.0.value", 1.0 / 3.0);
        r.push("timing_ms", 12);
        let text = r.render();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "command = classify");
        assert_eq!(lines[1], "verdict = disjoint");
        assert_eq!(lines[4], "timing_ms = 12");
        assert_eq!(Report::parse(&text).unwrap(), r);
    }

    #[test]
    fn repeated_keys_are_kept_and_get_returns_the_first() {
        let mut r = Report::new("x");
        r.push("row", "a");
        r.push("row", "b");
        assert_eq!(r.count_prefix("row"), 2);
        assert_eq!(r.get("row"), Some("a"));
        assert_eq!(Report::parse(&r.render()).unwrap(), r);
    }

    #[test]
    fn float_values_round_trip_exactly() {
        let mut r = Report::new("x");
        for (i, v) in [1.0 / 3.0, 3.0f64.sqrt() / 2.0, 1e-300, f64::MIN_POSITIVE]
            .into_iter()
            .enumerate()
        {
            r.push(format!("v.{i}"), v);
        }
        let back = Report::parse(&r.render()).unwrap();
        for (i, v) in [1.0 / 3.0, 3.0f64.sqrt() / 2.0, 1e-300, f64::MIN_POSITIVE]
            .into_iter()
            .enumerate()
        {
            let s = back.get(&format!("v.{i}")).unwrap();
            assert_eq!(s.parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn malformed_lines_are_rejected_with_the_line_number() {
        let err = Report::parse("command = ok\nbroken line\n").unwrap_err();
        assert_eq!(
            err,
            ReportError::Malformed {
                line: 2,
                text: "broken line".into()
            }
        );
    }

    #[test]
    fn digest_is_the_reference_sha256() {
        // SHA-256 of the empty string, a fixed reference value.
        assert_eq!(
            digest_bytes(b""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
        assert_ne!(digest_bytes(b"a"), digest_bytes(b"b"));
    }

    fn key_strategy() -> impl Strategy<Value = String> {
        "[a-z0-9_.-]{1,20}"
    }

    fn value_strategy() -> impl Strategy<Value = String> {
        // Any single-line text, including '=' and leading/trailing spaces.
        "[ -~]{0,40}"
    }

    proptest! {
        /// Rendering then parsing reproduces any pushable report exactly.
        #[test]
        fn render_parse_round_trip(pairs in prop::collection::vec((key_strategy(), value_strategy()), 0..20)) {
            let mut r = Report::default();
            for (k, v) in &pairs {
                r.push(k.clone(), v);
            }
            prop_assert_eq!(Report::parse(&r.render()).unwrap(), r);
        }
    }
}
