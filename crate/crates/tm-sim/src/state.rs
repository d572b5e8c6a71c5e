use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;
use tm_core::{ActionKind, Model};
use tm_validate::{validate_all, ValidationReport};

/// A thing in flight. `id` doubles as the execution tie-breaker: within a
/// tick, tokens act in the order they came into existence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub id: u64,
    pub label: String,
    /// Action node the token currently sits on.
    pub at: String,
}

/// An external input: at `tick`, a token labelled `label` appears on `node`.
/// Only transfer nodes (things arriving from outside) and create nodes
/// (things manifesting) can be stimulated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stimulus {
    pub tick: u64,
    pub node: String,
    pub label: String,
}

/// Runtime value of one declared store. Every write is appended to
/// `history`, even when the value does not change.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StoreState {
    pub value: String,
    pub history: Vec<(u64, String)>,
}

impl StoreState {
    pub fn write(&mut self, tick: u64, value: String) {
        self.value = value.clone();
        self.history.push((tick, value));
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimState {
    pub tick: u64,
    /// Always ascending by id.
    pub tokens: Vec<Token>,
    pub next_token_id: u64,
    pub stores: BTreeMap<String, StoreState>,
    /// One flag vector per event, aligned with its region.
    pub coverage: Vec<Vec<bool>>,
    /// Nodes switched off by cancellation for the rest of the run.
    pub disabled: BTreeSet<String>,
    pub completions: Vec<(u64, String)>,
    /// Stably sorted by tick; `next_stimulus` marks how far injection got.
    pub schedule: Vec<Stimulus>,
    pub next_stimulus: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimError {
    #[error("model has {} validation error(s); simulation requires a clean model", report.error_count)]
    InvalidModel { report: ValidationReport },
    #[error("stimulus targets undeclared node `{node}`")]
    UnknownStimulusNode { node: String },
    #[error("stimulus targets {kind} node `{node}`; only transfer and create nodes accept input")]
    BadStimulusKind { node: String, kind: ActionKind },
    #[error("tick budget must be at least 1")]
    ZeroBudget,
}

/// Check the model and the schedule, and lay out the initial state: tick 0,
/// no tokens, every store empty, all coverage cleared, nothing disabled.
pub fn init_sim(model: &Model, schedule: &[Stimulus]) -> Result<SimState, SimError> {
    let report = validate_all(model);
    if report.has_errors() {
        return Err(SimError::InvalidModel { report });
    }
    for stim in schedule {
        match model.action(&stim.node) {
            None => {
                return Err(SimError::UnknownStimulusNode {
                    node: stim.node.clone(),
                })
            }
            Some(a) if !matches!(a.kind, ActionKind::Transfer | ActionKind::Create) => {
                return Err(SimError::BadStimulusKind {
                    node: stim.node.clone(),
                    kind: a.kind,
                })
            }
            Some(_) => {}
        }
    }
    let mut sorted = schedule.to_vec();
    sorted.sort_by_key(|s| s.tick); // stable: declaration order breaks ties
    Ok(SimState {
        tick: 0,
        tokens: Vec::new(),
        next_token_id: 0,
        stores: model
            .stores
            .iter()
            .map(|s| (s.id.clone(), StoreState::default()))
            .collect(),
        coverage: model
            .events
            .iter()
            .map(|e| vec![false; e.region.len()])
            .collect(),
        disabled: BTreeSet::new(),
        completions: Vec::new(),
        schedule: sorted,
        next_stimulus: 0,
    })
}
