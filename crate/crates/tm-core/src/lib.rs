//! Core representation of thimac flow models.
//!
//! A model describes a system on three levels: the static level (nested
//! thimacs whose action nodes are wired by solid flow edges and dashed
//! trigger edges, with cylinder stores attached), the dynamic level (events
//! that select regions of the static diagram), and the behavioral level
//! (which events may succeed which). This crate holds the data types, a
//! checked builder, the fixed action-succession relation, region extraction,
//! reachability, and order-insensitive structural equality. Parsing,
//! validation, and execution live in sibling crates.

mod analysis;
mod builder;
mod canonical;
mod model;

pub use analysis::{flow_reachable, induced_region, successor_allowed, AnalysisError, Region};
pub use builder::{BuildError, ModelBuilder};
pub use canonical::{canonicalize, structural_eq};
pub use model::{
    is_identifier, is_quotable_text, ActionKind, ActionNode, BehaviorEdge, CancelSpec, Event,
    FlowEdge, Guard, GuardOp, Model, Store, Thimac, TriggerEdge,
};
