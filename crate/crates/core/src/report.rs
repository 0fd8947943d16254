//! Analysis reports and their text and JSON renderings.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::analysis::Finding;
use crate::diagnostic::{Diagnostic, Severity};

pub const SCHEMA: &str = "copri-report/1";

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub errors: usize,
    pub warnings: usize,
    pub violations: usize,
    pub query_rows: usize,
}

/// Everything known about one model: its diagnostics and findings, both
/// in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub model: Option<String>,
    pub counts: Counts,
    pub diagnostics: Vec<Diagnostic>,
    pub findings: Vec<Finding>,
}

impl Report {
    pub fn new(model: Option<String>, mut diagnostics: Vec<Diagnostic>, mut findings: Vec<Finding>) -> Self {
        crate::diagnostic::normalize(&mut diagnostics);
        crate::analysis::normalize_findings(&mut findings);
        let mut report = Self {
            schema: SCHEMA.to_string(),
            model,
            counts: Counts::default(),
            diagnostics,
            findings,
        };
        report.recount();
        report
    }

    /// Adds diagnostics, keeping order and counts canonical.
    pub fn with_diagnostics(mut self, diagnostics: impl IntoIterator<Item = Diagnostic>) -> Self {
        self.diagnostics.extend(diagnostics);
        crate::diagnostic::normalize(&mut self.diagnostics);
        self.recount();
        self
    }

    fn recount(&mut self) {
        let sev = |s| self.diagnostics.iter().filter(|d| d.severity == s).count();
        let violations = self.findings.iter().filter(|f| f.is_violation()).count();
        self.counts = Counts {
            errors: sev(Severity::Error),
            warnings: sev(Severity::Warning),
            violations,
            query_rows: self.findings.len() - violations,
        };
    }

    pub fn violations(&self) -> impl Iterator<Item = &Finding> {
        self.findings.iter().filter(|f| f.is_violation())
    }
}

/// Rebuilds every object with its keys in sorted order, whatever map type
/// `serde_json` was compiled with.
fn canonical(value: Value) -> Value {
    match value {
        Value::Object(map) => {
            let mut entries: Vec<(String, Value)> = map.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            Value::Object(entries.into_iter().map(|(k, v)| (k, canonical(v))).collect())
        }
        Value::Array(items) => Value::Array(items.into_iter().map(canonical).collect()),
        other => other,
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let value = serde_json::to_value(value).expect("reports always serialize");
    let mut out = serde_json::to_string_pretty(&canonical(value)).expect("values always serialize");
    out.push('\n');
    out
}

/// Canonical JSON: sorted keys, two-space indentation, trailing newline.
pub fn render_json(report: &Report) -> String {
    to_json(report)
}

/// A JSON array of reports, one per input file.
pub fn render_json_many(reports: &[Report]) -> String {
    to_json(&reports)
}

/// One line per finding, then one per diagnostic, then a summary.
pub fn render_text(report: &Report) -> String {
    let mut out = String::new();
    for f in &report.findings {
        out.push_str(&f.to_string());
        out.push('\n');
    }
    for d in &report.diagnostics {
        out.push_str(&d.to_string());
        out.push('\n');
    }
    out.push_str(&summary(&report.counts));
    out.push('\n');
    out
}

/// `N violations, M query rows`, plus warning and error counts when
/// non-zero. The nouns stay plural so the line is trivially parseable.
pub fn summary(c: &Counts) -> String {
    let mut s = format!("{} violations, {} query rows", c.violations, c.query_rows);
    if c.warnings > 0 {
        s.push_str(&format!(", {} warnings", c.warnings));
    }
    if c.errors > 0 {
        s.push_str(&format!(", {} errors", c.errors));
    }
    s
}
