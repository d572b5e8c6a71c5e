//! Structural algebra over models: the fixed action-succession relation,
//! region extraction, and mixed flow/trigger reachability.

use std::collections::{HashSet, VecDeque};

use crate::model::{ActionKind, FlowEdge, Model, TriggerEdge};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnalysisError {
    #[error("unknown action node `{0}`")]
    UnknownNode(String),
    #[error("empty node set")]
    EmptyNodeSet,
}

/// Whether a solid flow may connect a `src`-kind action directly to a
/// `dst`-kind action. The relation is fixed: things leave a machine only
/// through release/transfer, enter only through transfer/receive, and a
/// created or received thing may be processed or released. Everything else —
/// notably any flow *into* a create — is illegal.
pub fn successor_allowed(src: ActionKind, dst: ActionKind) -> bool {
    use ActionKind::*;
    matches!(
        (src, dst),
        (Create, Process)
            | (Create, Release)
            | (Receive, Process)
            | (Receive, Release)
            | (Process, Release)
            | (Release, Transfer)
            | (Transfer, Receive)
            | (Transfer, Transfer)
    )
}

/// A sub-diagram of the static level: a node set plus every edge of the
/// model whose both endpoints lie in the set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    /// Member nodes in model declaration order.
    pub nodes: Vec<String>,
    pub flows: Vec<FlowEdge>,
    pub triggers: Vec<TriggerEdge>,
}

/// Extract the sub-diagram induced by `nodes`. Errors name the first id (in
/// input order) that does not resolve to an action; an empty input set is
/// rejected because a region with no nodes selects nothing.
pub fn induced_region(model: &Model, nodes: &[String]) -> Result<Region, AnalysisError> {
    if nodes.is_empty() {
        return Err(AnalysisError::EmptyNodeSet);
    }
    for id in nodes {
        if model.action(id).is_none() {
            return Err(AnalysisError::UnknownNode(id.clone()));
        }
    }
    let members: HashSet<&str> = nodes.iter().map(String::as_str).collect();
    let nodes = model
        .actions
        .iter()
        .filter(|a| members.contains(a.id.as_str()))
        .map(|a| a.id.clone())
        .collect();
    let flows = model
        .flows
        .iter()
        .filter(|f| members.contains(f.src.as_str()) && members.contains(f.dst.as_str()))
        .cloned()
        .collect();
    let triggers = model
        .triggers
        .iter()
        .filter(|t| members.contains(t.src.as_str()) && members.contains(t.dst.as_str()))
        .cloned()
        .collect();
    Ok(Region {
        nodes,
        flows,
        triggers,
    })
}

/// Whether `to` can be reached from `from` along flow and/or trigger edges.
/// Reachability is reflexive: every node reaches itself.
pub fn flow_reachable(model: &Model, from: &str, to: &str) -> Result<bool, AnalysisError> {
    for id in [from, to] {
        if model.action(id).is_none() {
            return Err(AnalysisError::UnknownNode(id.to_owned()));
        }
    }
    if from == to {
        return Ok(true);
    }
    let mut seen: HashSet<&str> = HashSet::new();
    let mut queue: VecDeque<&str> = VecDeque::new();
    seen.insert(from);
    queue.push_back(from);
    while let Some(node) = queue.pop_front() {
        let flow_succ = model.flows_from(node).map(|f| f.dst.as_str());
        let trig_succ = model.triggers_from(node).map(|t| t.dst.as_str());
        for succ in flow_succ.chain(trig_succ) {
            if succ == to {
                return Ok(true);
            }
            if seen.insert(succ) {
                queue.push_back(succ);
            }
        }
    }
    Ok(false)
}
