//! Importers that redraft foreign notations as thimac models: deterministic
//! finite-state machines and context diagrams. The FSM side also carries a
//! deliberately independent reference interpreter so the whole pipeline —
//! import, then simulate — can be checked against a plain table walk.

mod context;
mod fsm;
mod oracle;

pub use context::{
    import_context, parse_context, sanitize_ident, ContextSpec, CtxError, CtxParseError,
};
pub use fsm::{
    fsm_schedule, import_fsm, initial_node, parse_fsm, FsmError, FsmParseError, FsmSpec,
    SYMBOL_SPACING,
};
pub use oracle::{fsm_oracle_run, OracleError};
