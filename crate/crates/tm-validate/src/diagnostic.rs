use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
        })
    }
}

/// Stable rule identifiers. The id namespaces mirror the three model levels:
/// S = static structure, D = dynamic events over regions, B = behavior graph.
/// Ids are part of the public contract — tooling greps for them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Rule {
    /// Unresolved cross-reference (dangling owner, parent, endpoint, or
    /// store attachment), or thimac nesting that is not a forest.
    S0,
    /// Flow edge outside the fixed action-succession relation.
    S1,
    /// Flow edge into a create node.
    S2,
    /// Transfer feeding a transfer inside one thimac.
    S3,
    /// Action node with no incident edges.
    S4,
    /// Trigger guard reading an undeclared store.
    S5,
    /// Event region member that is not a declared action.
    D1,
    /// Event with an empty region.
    D2,
    /// Action covered by no event region.
    D3,
    /// Event window that ends before it starts.
    D4,
    /// Cancellation target that is undeclared or the event itself.
    D5,
    /// Behavior edge with no static justification.
    B1,
    /// Event unreachable from every source event.
    B2,
    /// Behavior edge naming an undeclared event.
    B3,
}

impl Rule {
    pub fn severity(self) -> Severity {
        match self {
            Rule::S3 | Rule::S4 | Rule::D3 | Rule::B2 => Severity::Warning,
            _ => Severity::Error,
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub rule: Rule,
    /// Ids of the model elements involved, most significant first.
    pub subjects: Vec<String>,
    pub message: String,
}

impl Diagnostic {
    pub fn new(rule: Rule, subjects: Vec<String>, message: String) -> Diagnostic {
        Diagnostic {
            severity: rule.severity(),
            rule,
            subjects,
            message,
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.severity, self.rule)?;
        for subject in &self.subjects {
            write!(f, " {subject}")?;
        }
        write!(f, ": {}", self.message)
    }
}
