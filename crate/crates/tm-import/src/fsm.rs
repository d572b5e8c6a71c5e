//! Finite-state machines redrafted as thimac models.
//!
//! The encoding keeps the machine's state as a store value dispatched by
//! guarded triggers: an environment thimac releases and transfers one
//! symbol at a time; the machine consumes it through a transfer → receive →
//! process chain; the process node's guarded triggers fan out to one create
//! node per state, and the chosen create writes its state's name into the
//! `state` store. Scheduling a word is then a pure timing convention — see
//! [`SYMBOL_SPACING`] and [`fsm_schedule`].

use std::collections::BTreeSet;

use thiserror::Error;
use tm_core::{ActionKind, Guard, GuardOp, Model, ModelBuilder};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FsmSpec {
    pub states: Vec<String>,
    pub initial: String,
    pub alphabet: Vec<String>,
    /// (from state, symbol, to state).
    pub transitions: Vec<(String, String, String)>,
}

impl FsmSpec {
    /// True when every (state, symbol) pair has a transition.
    pub fn is_total(&self) -> bool {
        self.states.iter().all(|s| {
            self.alphabet
                .iter()
                .all(|a| self.transitions.iter().any(|(f, sym, _)| f == s && sym == a))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FsmError {
    #[error("state machine has no states")]
    NoStates,
    #[error("duplicate state `{0}`")]
    DuplicateState(String),
    #[error("duplicate symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("initial state `{0}` is not declared")]
    UnknownInitial(String),
    #[error("transition references undeclared state `{0}`")]
    UnknownState(String),
    #[error("transition references undeclared symbol `{0}`")]
    UnknownSymbol(String),
    #[error("nondeterministic: two transitions from `{state}` on `{symbol}`")]
    Nondeterministic { state: String, symbol: String },
    #[error("`{0}` is not usable as a name (letters, digits, underscore, not starting with a digit)")]
    BadName(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct FsmParseError {
    pub line: usize,
    pub message: String,
}

/// Read the line-oriented state machine format: `states:`, `initial:`,
/// `alphabet:`, and one `trans: from symbol to` per transition. `#` starts
/// a comment. The result is syntactically well-formed but not yet checked
/// against the determinism/reference rules — `import_fsm` does that.
pub fn parse_fsm(src: &str) -> Result<FsmSpec, FsmParseError> {
    let mut states: Vec<String> = Vec::new();
    let mut initial: Option<String> = None;
    let mut alphabet: Vec<String> = Vec::new();
    let mut transitions = Vec::new();
    for (idx, raw) in src.lines().enumerate() {
        let line = idx + 1;
        let text = raw.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        let (key, rest) = text.split_once(':').ok_or_else(|| FsmParseError {
            line,
            message: "expected `key: values`".into(),
        })?;
        let words: Vec<&str> = rest.split_whitespace().collect();
        match key.trim() {
            "states" => states.extend(words.iter().map(|w| (*w).to_owned())),
            "alphabet" => alphabet.extend(words.iter().map(|w| (*w).to_owned())),
            "initial" => {
                if words.len() != 1 {
                    return Err(FsmParseError {
                        line,
                        message: format!("`initial:` needs exactly one state, got {}", words.len()),
                    });
                }
                if initial.replace(words[0].to_owned()).is_some() {
                    return Err(FsmParseError {
                        line,
                        message: "`initial:` given twice".into(),
                    });
                }
            }
            "trans" => {
                if words.len() != 3 {
                    return Err(FsmParseError {
                        line,
                        message: format!(
                            "`trans:` needs `from symbol to`, got {} word(s)",
                            words.len()
                        ),
                    });
                }
                transitions.push((
                    words[0].to_owned(),
                    words[1].to_owned(),
                    words[2].to_owned(),
                ));
            }
            other => {
                return Err(FsmParseError {
                    line,
                    message: format!("unknown key `{other}`"),
                })
            }
        }
    }
    let initial = initial.ok_or(FsmParseError {
        line: src.lines().count() + 1,
        message: "missing `initial:` line".into(),
    })?;
    Ok(FsmSpec {
        states,
        initial,
        alphabet,
        transitions,
    })
}

fn check_spec(spec: &FsmSpec) -> Result<(), FsmError> {
    if spec.states.is_empty() {
        return Err(FsmError::NoStates);
    }
    let mut seen = BTreeSet::new();
    for s in &spec.states {
        if !tm_core::is_identifier(s) {
            return Err(FsmError::BadName(s.clone()));
        }
        if !seen.insert(s) {
            return Err(FsmError::DuplicateState(s.clone()));
        }
    }
    let mut seen = BTreeSet::new();
    for a in &spec.alphabet {
        if !tm_core::is_identifier(a) {
            return Err(FsmError::BadName(a.clone()));
        }
        if !seen.insert(a) {
            return Err(FsmError::DuplicateSymbol(a.clone()));
        }
    }
    if !spec.states.contains(&spec.initial) {
        return Err(FsmError::UnknownInitial(spec.initial.clone()));
    }
    let mut seen = BTreeSet::new();
    for (from, symbol, to) in &spec.transitions {
        for state in [from, to] {
            if !spec.states.contains(state) {
                return Err(FsmError::UnknownState(state.clone()));
            }
        }
        if !spec.alphabet.contains(symbol) {
            return Err(FsmError::UnknownSymbol(symbol.clone()));
        }
        if !seen.insert((from, symbol)) {
            return Err(FsmError::Nondeterministic {
                state: from.clone(),
                symbol: symbol.clone(),
            });
        }
    }
    Ok(())
}

/// Ticks between consecutive symbol injections: the three-node consumption
/// chain plus two ticks of slack (trigger firing, state write), so each
/// symbol's effect on the `state` store settles before the next symbol's
/// guard is evaluated.
pub const SYMBOL_SPACING: u64 = 5;

/// Node that establishes the initial state when stimulated at tick 0.
pub fn initial_node(spec: &FsmSpec) -> String {
    format!("state_{}", spec.initial)
}

/// Encode `word` as a stimulus schedule `(tick, node, label)`: the initial
/// state's create node at tick 0, then symbol i at the environment transfer
/// node at tick `1 + SYMBOL_SPACING * i`.
pub fn fsm_schedule(spec: &FsmSpec, word: &[String]) -> Vec<(u64, String, String)> {
    let mut schedule = vec![(0, initial_node(spec), spec.initial.clone())];
    for (i, symbol) in word.iter().enumerate() {
        schedule.push((
            1 + SYMBOL_SPACING * i as u64,
            format!("env_transfer_{symbol}"),
            symbol.clone(),
        ));
    }
    schedule
}

/// Redraft `spec` as a model. The result always passes validation with zero
/// errors, and running it under [`fsm_schedule`] makes the `state` store's
/// write history replay the machine's state sequence.
pub fn import_fsm(spec: &FsmSpec) -> Result<Model, FsmError> {
    check_spec(spec)?;
    let mut b = ModelBuilder::new("fsm").expect("static name");

    b.thimac("environment", Some("Environment"), None).expect("fresh id");
    for a in &spec.alphabet {
        b.action(
            &format!("env_release_{a}"),
            ActionKind::Release,
            "environment",
            None,
            Some(a),
        )
        .expect("unique per symbol");
        b.action(
            &format!("env_transfer_{a}"),
            ActionKind::Transfer,
            "environment",
            None,
            Some(a),
        )
        .expect("unique per symbol");
        b.flow(&format!("env_release_{a}"), &format!("env_transfer_{a}"))
            .expect("distinct ids");
    }

    b.thimac("machine", Some("Machine"), None).expect("fresh id");
    for a in &spec.alphabet {
        b.action(
            &format!("sym_transfer_{a}"),
            ActionKind::Transfer,
            "machine",
            None,
            Some(a),
        )
        .expect("unique per symbol");
        b.action(
            &format!("sym_receive_{a}"),
            ActionKind::Receive,
            "machine",
            None,
            Some(a),
        )
        .expect("unique per symbol");
        b.action(
            &format!("sym_process_{a}"),
            ActionKind::Process,
            "machine",
            None,
            Some(a),
        )
        .expect("unique per symbol");
        b.flow(&format!("env_transfer_{a}"), &format!("sym_transfer_{a}"))
            .expect("distinct ids");
        b.flow(&format!("sym_transfer_{a}"), &format!("sym_receive_{a}"))
            .expect("distinct ids");
        b.flow(&format!("sym_receive_{a}"), &format!("sym_process_{a}"))
            .expect("distinct ids");
    }

    b.thimac("state", Some("State"), Some("machine")).expect("fresh id");
    b.store("state", "state").expect("fresh id");
    for s in &spec.states {
        b.action(
            &format!("state_{s}"),
            ActionKind::Create,
            "state",
            Some("state"),
            Some(s),
        )
        .expect("unique per state");
    }

    for (from, symbol, to) in &spec.transitions {
        let guard = Guard {
            store: "state".into(),
            op: GuardOp::Equals,
            value: from.clone(),
        };
        b.trigger(
            &format!("sym_process_{symbol}"),
            &format!("state_{to}"),
            Some(guard),
        )
        .expect("distinct ids");
    }

    for a in &spec.alphabet {
        b.event(
            &format!("ev_sym_{a}"),
            &format!("symbol {a} consumed"),
            &[
                &format!("sym_transfer_{a}"),
                &format!("sym_receive_{a}"),
                &format!("sym_process_{a}"),
            ],
            None,
            None,
        )
        .expect("unique per symbol");
    }
    for s in &spec.states {
        b.event(
            &format!("ev_state_{s}"),
            &format!("entered {s}"),
            &[&format!("state_{s}")],
            None,
            None,
        )
        .expect("unique per state");
    }

    let mut seen_edges = BTreeSet::new();
    for (_, symbol, to) in &spec.transitions {
        let edge = (format!("ev_sym_{symbol}"), format!("ev_state_{to}"));
        if seen_edges.insert(edge.clone()) {
            b.behavior(&edge.0, &edge.1).expect("distinct ids");
        }
    }

    Ok(b.build())
}
