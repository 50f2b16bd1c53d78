//! Report files: verdicts plus computed data, as byte-stable JSON.
//!
//! Object keys are sorted (`serde_json` maps are ordered), rationals are
//! canonical `"p/q"` strings, and timing is only present when requested.

use std::io::Write;
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::report::{all_pass, IdentityReport};
use crate::{Error, Result};

pub const TOOL: &str = "pertalg";

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ReportFile {
    /// Arguments after the program name, as given.
    pub command: Vec<String>,
    pub results: Vec<IdentityReport>,
    /// Computed structures and listings, keyed by name.
    pub data: Map<String, Value>,
    pub timing_ms: Option<u128>,
}

impl ReportFile {
    pub fn new(command: Vec<String>) -> ReportFile {
        ReportFile {
            command,
            ..ReportFile::default()
        }
    }

    pub fn passed(&self) -> bool {
        all_pass(&self.results)
    }

    pub fn failed(&self) -> impl Iterator<Item = &IdentityReport> {
        self.results.iter().filter(|r| !r.passed())
    }

    pub fn insert(&mut self, key: &str, value: impl serde::Serialize) {
        self.data.insert(
            key.into(),
            serde_json::to_value(value).expect("serializable"),
        );
    }

    pub fn to_json(&self) -> Value {
        let failed = self.failed().count();
        let mut v = json!({
            "tool": TOOL,
            "version": env!("CARGO_PKG_VERSION"),
            "command": self.command,
            "status": if failed == 0 { "pass" } else { "fail" },
            "summary": {"checks": self.results.len(), "failed": failed},
            "results": self.results,
            "data": self.data,
        });
        if let Some(ms) = self.timing_ms {
            v["timing_ms"] = json!(ms);
        }
        v
    }

    /// Pretty JSON with a trailing newline.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("json");
        s.push('\n');
        s
    }

    /// One line per failure after a count line.
    pub fn summary(&self) -> String {
        let failed: Vec<_> = self.failed().collect();
        let mut s = format!(
            "{}: {}/{} checks passed\n",
            self.command.first().map_or("", String::as_str),
            self.results.len() - failed.len(),
            self.results.len()
        );
        for r in failed {
            match &r.witness {
                Some(w) => s.push_str(&format!(
                    "  FAIL {} (cap {}): {} at {} [{}], grade {}\n",
                    r.identity_id, r.cap, w.equation, w.term, w.coefficient, w.grade
                )),
                None => s.push_str(&format!("  FAIL {} (cap {})\n", r.identity_id, r.cap)),
            }
        }
        s
    }
}

/// Writes the rendered report to `path`, or to `stdout` when `path` is
/// `None`.
pub fn write_report(
    report: &ReportFile,
    path: Option<&Path>,
    stdout: &mut dyn Write,
) -> Result<()> {
    let text = report.render();
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Error::Io(e.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog::failing_example;
    use crate::scalar::Q;

    #[test]
    fn keys_are_sorted_and_timing_optional() {
        let mut r = ReportFile::new(vec!["trees".into()]);
        r.insert("zeta", 1);
        r.insert("alpha", 2);
        let text = r.render();
        let keys = [
            "\"command\"",
            "\"data\"",
            "\"results\"",
            "\"status\"",
            "\"summary\"",
            "\"tool\"",
            "\"version\"",
        ];
        let pos: Vec<usize> = keys.iter().map(|k| text.find(k).unwrap()).collect();
        assert!(pos.windows(2).all(|p| p[0] < p[1]));
        assert!(text.find("\"alpha\"").unwrap() < text.find("\"zeta\"").unwrap());
        assert!(!text.contains("timing_ms"));
        r.timing_ms = Some(3);
        assert!(r.render().contains("\"timing_ms\": 3"));
    }

    #[test]
    fn failing_identity_has_witness() {
        let mut r = ReportFile::new(vec!["verify-algebra".into()]);
        r.results.push(failing_example::<Q>(2));
        assert!(!r.passed());
        let v = r.to_json();
        assert_eq!(v["status"], "fail");
        let w = &v["results"][0]["witness"];
        assert!(w["term"].as_str().is_some_and(|t| !t.is_empty()));
        assert!(w["grade"].is_i64());
        assert!(r.summary().contains("FAIL FALSE-EXAMPLE"));
    }
}
