//! Support library for the `tm` binary: DOT rendering of the three model
//! levels, stimulus-schedule files, the stable JSON report shape, and the
//! fixture-corpus harness. Everything here is deterministic — same inputs,
//! same bytes — so outputs can be committed and diffed.

pub mod corpus;
pub mod dot;
pub mod json;
pub mod schedule;

pub use corpus::{run_corpus, CorpusError, CorpusReport, FixtureOutcome, CORPUS_MAX_TICKS};
pub use dot::{to_dot, RenderError, RenderLevel, RenderOptions};
pub use json::{render_json, JsonReport, JsonTrace};
pub use schedule::{parse_schedule, ScheduleParseError};
