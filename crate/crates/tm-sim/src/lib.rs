//! Deterministic discrete-tick execution of thimac models. Tokens are the
//! things; they walk solid flows one node per tick, triggers copy them
//! across machine boundaries, events complete when their whole region has
//! executed since the last reset, and a completing event with a `cancels`
//! clause pulls its targets back to the static level — tokens removed,
//! progress erased, region disabled for the rest of the run.
//!
//! Everything here is a pure function of (model, schedule, budget): token
//! ids, declaration order, and schedule order break every tie.

mod conformance;
mod engine;
mod state;
mod trace;

pub use conformance::{conformance, ConformanceReport, SuccessionViolation, WindowWarning};
pub use engine::{apply_cancellation, run, step, TickReport};
pub use state::{init_sim, SimError, SimState, Stimulus, StoreState, Token};
pub use trace::{ExecutionRecord, FinalSummary, Trace};
