//! Checks a trace against the model's behavior graph: every completion of an
//! event with declared predecessors must be preceded (or accompanied) by a
//! completion of at least one of them, and completions should land inside
//! their event's declared time window.

use std::fmt;

use tm_core::Model;

use crate::trace::Trace;

/// A completion whose declared predecessors were all still outstanding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuccessionViolation {
    pub tick: u64,
    pub event: String,
    /// The predecessors, none of which had completed by `tick`.
    pub expected_before: Vec<String>,
}

impl fmt::Display for SuccessionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "tick {}: `{}` completed before any of its predecessors ({})",
            self.tick,
            self.event,
            self.expected_before.join(", ")
        )
    }
}

/// A completion outside the event's declared `time` window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowWarning {
    pub tick: u64,
    pub event: String,
    pub window: (u64, u64),
}

impl fmt::Display for WindowWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "tick {}: `{}` completed outside its window {}..{}",
            self.tick, self.event, self.window.0, self.window.1
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConformanceReport {
    pub violations: Vec<SuccessionViolation>,
    pub warnings: Vec<WindowWarning>,
}

impl ConformanceReport {
    pub fn is_conformant(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check `trace` (produced from `model`) against the behavior graph.
pub fn conformance(trace: &Trace, model: &Model) -> ConformanceReport {
    let mut report = ConformanceReport::default();
    for (tick, event_id) in &trace.completions {
        let predecessors: Vec<&str> = model
            .behavior
            .iter()
            .filter(|edge| &edge.to == event_id)
            .map(|edge| edge.from.as_str())
            .collect();
        if !predecessors.is_empty() {
            let satisfied = trace.completions.iter().any(|(ptick, pevent)| {
                ptick <= tick && predecessors.contains(&pevent.as_str())
            });
            if !satisfied {
                report.violations.push(SuccessionViolation {
                    tick: *tick,
                    event: event_id.clone(),
                    expected_before: predecessors.iter().map(|s| (*s).to_owned()).collect(),
                });
            }
        }
        if let Some(event) = model.event(event_id) {
            if let Some((start, end)) = event.window {
                if *tick < start || *tick > end {
                    report.warnings.push(WindowWarning {
                        tick: *tick,
                        event: event_id.clone(),
                        window: (start, end),
                    });
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trace::FinalSummary;
    use tm_core::{ActionKind, ModelBuilder};

    fn chain_model() -> Model {
        let mut b = ModelBuilder::new("m").unwrap();
        b.thimac("t", None, None).unwrap();
        b.action("a", ActionKind::Create, "t", None, None).unwrap();
        b.action("b", ActionKind::Process, "t", None, None).unwrap();
        b.action("c", ActionKind::Release, "t", None, None).unwrap();
        b.flow("a", "b").unwrap();
        b.flow("b", "c").unwrap();
        b.event("E1", "one", &["a"], None, None).unwrap();
        b.event("E2", "two", &["b"], Some((1, 2)), None).unwrap();
        b.event("E3", "three", &["c"], None, None).unwrap();
        b.behavior("E1", "E2").unwrap();
        b.behavior("E2", "E3").unwrap();
        b.build()
    }

    fn trace_of(completions: Vec<(u64, &str)>) -> Trace {
        Trace {
            executions: vec![],
            completions: completions
                .into_iter()
                .map(|(t, e)| (t, e.to_owned()))
                .collect(),
            exhausted: false,
            final_state: FinalSummary::default(),
        }
    }

    #[test]
    fn ordered_chain_is_conformant() {
        let m = chain_model();
        let report = conformance(&trace_of(vec![(0, "E1"), (1, "E2"), (2, "E3")]), &m);
        assert!(report.is_conformant());
        assert!(report.warnings.is_empty());
    }

    #[test]
    fn out_of_order_completion_is_a_violation() {
        let m = chain_model();
        let report = conformance(&trace_of(vec![(0, "E1"), (1, "E3"), (2, "E2")]), &m);
        assert_eq!(report.violations.len(), 1);
        let v = &report.violations[0];
        assert_eq!(v.event, "E3");
        assert_eq!(v.expected_before, vec!["E2"]);
        assert_eq!(
            v.to_string(),
            "tick 1: `E3` completed before any of its predecessors (E2)"
        );
        // E2 itself is fine (E1 completed earlier), but it lands outside
        // 1..2? tick 2 is inside; no warnings.
        assert!(report.warnings.is_empty());
    }

    #[test]
    fn same_tick_predecessor_counts() {
        let m = chain_model();
        let report = conformance(&trace_of(vec![(0, "E1"), (1, "E2"), (1, "E3")]), &m);
        assert!(report.is_conformant());
    }

    #[test]
    fn any_predecessor_suffices() {
        let mut b = ModelBuilder::new("m").unwrap();
        b.thimac("t", None, None).unwrap();
        b.action("a", ActionKind::Create, "t", None, None).unwrap();
        b.event("EA", "a", &["a"], None, None).unwrap();
        b.event("EB", "b", &["a"], None, None).unwrap();
        b.event("EC", "c", &["a"], None, None).unwrap();
        b.behavior("EA", "EC").unwrap();
        b.behavior("EB", "EC").unwrap();
        let m = b.build();
        let report = conformance(&trace_of(vec![(0, "EB"), (3, "EC")]), &m);
        assert!(report.is_conformant());
    }

    #[test]
    fn late_completion_warns_about_the_window() {
        let m = chain_model();
        let report = conformance(&trace_of(vec![(0, "E1"), (5, "E2"), (6, "E3")]), &m);
        assert!(report.is_conformant());
        assert_eq!(report.warnings.len(), 1);
        assert_eq!(report.warnings[0].event, "E2");
        assert_eq!(report.warnings[0].window, (1, 2));
    }

    #[test]
    fn source_events_need_no_predecessor() {
        let m = chain_model();
        let report = conformance(&trace_of(vec![(7, "E1")]), &m);
        assert!(report.is_conformant());
    }
}
