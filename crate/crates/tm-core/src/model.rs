//! Data types for the three model levels: static structure (thimacs, actions,
//! stores, flows, triggers), dynamic structure (events), and behavioral
//! structure (event succession).
//!
//! A `Model` is plain data and is immutable once built. Cross-references are
//! stored as id strings and are allowed to dangle at this layer; resolution
//! problems are the validator's concern, which keeps broken models
//! representable (and therefore diagnosable).

use std::fmt;

/// The five kinds of action a machine can perform on things that flow
/// through it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ActionKind {
    /// A new thing is manifested in the machine.
    Create,
    /// The thing is changed, handled or examined; no new thing results.
    Process,
    /// The thing is marked ready for transfer outside the machine.
    Release,
    /// The thing is input into or output from a machine.
    Transfer,
    /// The thing arrives and is accepted.
    Receive,
}

impl ActionKind {
    pub const ALL: [ActionKind; 5] = [
        ActionKind::Create,
        ActionKind::Process,
        ActionKind::Release,
        ActionKind::Transfer,
        ActionKind::Receive,
    ];

    /// Lowercase keyword used in the textual form.
    pub fn keyword(self) -> &'static str {
        match self {
            ActionKind::Create => "create",
            ActionKind::Process => "process",
            ActionKind::Release => "release",
            ActionKind::Transfer => "transfer",
            ActionKind::Receive => "receive",
        }
    }

    pub fn from_keyword(word: &str) -> Option<ActionKind> {
        ActionKind::ALL.into_iter().find(|k| k.keyword() == word)
    }
}

impl fmt::Display for ActionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

/// A thing/machine unit. Thimacs nest, forming a forest; `parent` is `None`
/// for top-level thimacs. `children` and `actions` preserve declaration
/// order, which downstream passes use as their determinism anchor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Thimac {
    pub id: String,
    /// Optional display name; falls back to the id wherever shown.
    pub name: Option<String>,
    pub parent: Option<String>,
    pub children: Vec<String>,
    pub actions: Vec<String>,
}

impl Thimac {
    pub fn display_name(&self) -> &str {
        self.name.as_deref().unwrap_or(&self.id)
    }
}

/// One action node in the static level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionNode {
    pub id: String,
    pub kind: ActionKind,
    /// Id of the thimac this action belongs to.
    pub owner: String,
    /// Optional attached store. A create or receive that executes with a
    /// store attached writes into it.
    pub store: Option<String>,
    /// Optional free-text label. For a create node with a store this doubles
    /// as the value written; otherwise it is descriptive only.
    pub label: Option<String>,
}

/// A store declaration (drawn as a cylinder). Runtime value and history live
/// in the simulator's state, not here: models never mutate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Store {
    pub id: String,
    pub owner: String,
}

/// A solid flow edge between two action nodes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FlowEdge {
    pub src: String,
    pub dst: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GuardOp {
    Equals,
    NotEquals,
}

impl GuardOp {
    pub fn symbol(self) -> &'static str {
        match self {
            GuardOp::Equals => "==",
            GuardOp::NotEquals => "!=",
        }
    }
}

/// Condition on a store's current value.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Guard {
    pub store: String,
    pub op: GuardOp,
    pub value: String,
}

impl fmt::Display for Guard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} \"{}\"", self.store, self.op.symbol(), self.value)
    }
}

/// A dashed trigger edge: a non-sequential hand-off that starts a new flow at
/// `dst` when `src` executes and the guard (if any) holds.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TriggerEdge {
    pub src: String,
    pub dst: String,
    pub guard: Option<Guard>,
}

/// Which events a completing event cancels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CancelSpec {
    /// Every other declared event.
    All,
    /// An explicit list of event ids.
    Events(Vec<String>),
}

/// A dynamic-level event: a region of the static diagram plus an optional
/// time window and an optional cancellation effect.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Event {
    pub id: String,
    pub name: String,
    /// Action node ids making up the event's region, in declaration order.
    pub region: Vec<String>,
    /// Inclusive tick window `(start, end)`.
    pub window: Option<(u64, u64)>,
    pub cancels: Option<CancelSpec>,
}

/// One succession edge of the behavioral level.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct BehaviorEdge {
    pub from: String,
    pub to: String,
}

/// A complete three-level model. All collections preserve declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Model {
    pub name: String,
    pub thimacs: Vec<Thimac>,
    pub actions: Vec<ActionNode>,
    pub stores: Vec<Store>,
    pub flows: Vec<FlowEdge>,
    pub triggers: Vec<TriggerEdge>,
    pub events: Vec<Event>,
    pub behavior: Vec<BehaviorEdge>,
}

impl Model {
    pub fn thimac(&self, id: &str) -> Option<&Thimac> {
        self.thimacs.iter().find(|t| t.id == id)
    }

    pub fn action(&self, id: &str) -> Option<&ActionNode> {
        self.actions.iter().find(|a| a.id == id)
    }

    pub fn store(&self, id: &str) -> Option<&Store> {
        self.stores.iter().find(|s| s.id == id)
    }

    pub fn event(&self, id: &str) -> Option<&Event> {
        self.events.iter().find(|e| e.id == id)
    }

    pub fn top_level_thimacs(&self) -> impl Iterator<Item = &Thimac> {
        self.thimacs.iter().filter(|t| t.parent.is_none())
    }

    pub fn flows_from<'a>(&'a self, id: &'a str) -> impl Iterator<Item = &'a FlowEdge> {
        self.flows.iter().filter(move |f| f.src == id)
    }

    pub fn triggers_from<'a>(&'a self, id: &'a str) -> impl Iterator<Item = &'a TriggerEdge> {
        self.triggers.iter().filter(move |t| t.src == id)
    }

    pub fn stores_owned_by<'a>(&'a self, thimac: &'a str) -> impl Iterator<Item = &'a Store> {
        self.stores.iter().filter(move |s| s.owner == thimac)
    }
}

/// True if `s` is a legal identifier: `[A-Za-z_][A-Za-z0-9_]*`.
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// True if `s` may appear between quotes in the textual form: any characters
/// except the quote itself and line breaks.
pub fn is_quotable_text(s: &str) -> bool {
    !s.contains('"') && !s.contains('\n') && !s.contains('\r')
}
