//! Cross-level consistency checking for thimac models. One model carries
//! three views — static structure, events over regions, event succession —
//! and this crate makes their mutual consistency mechanical: each finding is
//! a stable rule id, a severity, the subject ids, and a deterministic
//! message, so reports can be diffed, grepped, and asserted on.

mod diagnostic;
mod passes;

use serde::Serialize;
use tm_core::Model;

pub use diagnostic::{Diagnostic, Rule, Severity};
pub use passes::{validate_behavior, validate_dynamic, validate_static};

/// All findings for one model: the three passes concatenated in fixed order
/// (static, dynamic, behavior), grouped by rule id inside each pass, in
/// declaration order inside each rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub diagnostics: Vec<Diagnostic>,
    pub error_count: usize,
    pub warning_count: usize,
}

impl ValidationReport {
    pub fn has_errors(&self) -> bool {
        self.error_count > 0
    }

    /// One line per finding: `SEVERITY RULE subject...: message`.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for d in &self.diagnostics {
            out.push_str(&d.to_string());
            out.push('\n');
        }
        out
    }
}

/// Run every pass over `model`. Never fails: broken cross-references are
/// findings, not preconditions.
pub fn validate_all(model: &Model) -> ValidationReport {
    let mut diagnostics = validate_static(model);
    diagnostics.extend(validate_dynamic(model));
    diagnostics.extend(validate_behavior(model));
    let error_count = diagnostics
        .iter()
        .filter(|d| d.severity == Severity::Error)
        .count();
    let warning_count = diagnostics.len() - error_count;
    ValidationReport {
        diagnostics,
        error_count,
        warning_count,
    }
}
