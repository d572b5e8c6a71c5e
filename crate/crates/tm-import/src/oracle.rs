//! Reference interpreter for state machines: a literal table walk, nothing
//! more. This module deliberately shares no logic with the importer or the
//! simulator — it exists so their composition has something independent to
//! be measured against.

use thiserror::Error;

use crate::fsm::FsmSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("input symbol `{0}` is not in the alphabet")]
    UnknownSymbol(String),
    #[error("no transition from `{state}` on `{symbol}`")]
    MissingTransition { state: String, symbol: String },
}

/// Walk the transition table over `input`. Returns the visited states,
/// `input.len() + 1` long, starting with the initial state.
pub fn fsm_oracle_run(spec: &FsmSpec, input: &[String]) -> Result<Vec<String>, OracleError> {
    let mut current = spec.initial.clone();
    let mut visited = vec![current.clone()];
    for symbol in input {
        if !spec.alphabet.contains(symbol) {
            return Err(OracleError::UnknownSymbol(symbol.clone()));
        }
        let hit = spec
            .transitions
            .iter()
            .find(|(from, sym, _)| from == &current && sym == symbol);
        match hit {
            Some((_, _, to)) => {
                current = to.clone();
                visited.push(current.clone());
            }
            None => {
                return Err(OracleError::MissingTransition {
                    state: current,
                    symbol: symbol.clone(),
                })
            }
        }
    }
    Ok(visited)
}
