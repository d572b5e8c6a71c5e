//! The machine-readable report shape shared by `validate` and `sim`:
//!
//! ```json
//! { "model": "name",
//!   "diagnostics": [{"severity": "...", "rule": "...", "subjects": [...], "message": "..."}],
//!   "trace": { "executions": [[tick, node, token]], "completions": [[tick, event]] } }
//! ```
//!
//! `trace` is omitted when nothing was simulated. Serialization is key-order
//! stable, so identical inputs give identical bytes.

use serde::Serialize;
use tm_sim::Trace;
use tm_validate::{Diagnostic, ValidationReport};

#[derive(Debug, Serialize)]
pub struct JsonReport<'a> {
    pub model: &'a str,
    pub diagnostics: &'a [Diagnostic],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<JsonTrace>,
}

#[derive(Debug, Serialize)]
pub struct JsonTrace {
    pub executions: Vec<(u64, String, u64)>,
    pub completions: Vec<(u64, String)>,
}

impl JsonTrace {
    pub fn from_trace(trace: &Trace) -> Self {
        Self {
            executions: trace
                .executions
                .iter()
                .map(|e| (e.tick, e.node.clone(), e.token))
                .collect(),
            completions: trace.completions.clone(),
        }
    }
}

/// Render the report as pretty JSON with a trailing newline.
pub fn render_json(model: &str, report: &ValidationReport, trace: Option<&Trace>) -> String {
    let doc = JsonReport {
        model,
        diagnostics: &report.diagnostics,
        trace: trace.map(JsonTrace::from_trace),
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("report types serialize");
    out.push('\n');
    out
}
