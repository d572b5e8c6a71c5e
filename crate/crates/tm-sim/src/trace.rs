use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::state::StoreState;

/// One node execution: at `tick`, token `token` (carrying `label`) ran `node`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExecutionRecord {
    pub tick: u64,
    pub node: String,
    pub token: u64,
    pub label: String,
}

/// Where a run ended up.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FinalSummary {
    pub tick: u64,
    pub live_tokens: usize,
    pub stores: BTreeMap<String, StoreState>,
}

/// The full record of a run. Ticks are non-decreasing in both lists, and
/// within one tick every execution precedes every completion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub executions: Vec<ExecutionRecord>,
    pub completions: Vec<(u64, String)>,
    /// The tick budget ran out before the model went quiet.
    pub exhausted: bool,
    pub final_state: FinalSummary,
}

impl Trace {
    /// Line-oriented log: `tick node token-id label` for executions and
    /// `tick COMPLETE event-id` for completions, merged chronologically.
    pub fn render_log(&self) -> String {
        let mut out = String::new();
        let mut execs = self.executions.iter().peekable();
        let mut comps = self.completions.iter().peekable();
        loop {
            // Executions win ties: they happen earlier within the tick.
            let take_exec = match (execs.peek(), comps.peek()) {
                (Some(e), Some((ct, _))) => e.tick <= *ct,
                (Some(_), None) => true,
                (None, Some(_)) => false,
                (None, None) => break,
            };
            if take_exec {
                let e = execs.next().unwrap();
                if e.label.is_empty() {
                    let _ = writeln!(out, "{} {} {}", e.tick, e.node, e.token);
                } else {
                    let _ = writeln!(out, "{} {} {} {}", e.tick, e.node, e.token, e.label);
                }
            } else {
                let (tick, event) = comps.next().unwrap();
                let _ = writeln!(out, "{tick} COMPLETE {event}");
            }
        }
        out
    }
}
