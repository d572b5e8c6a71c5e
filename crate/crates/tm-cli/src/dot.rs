//! DOT export of the three model levels. Thimacs become nested clusters,
//! flows solid arrows, triggers dashed arrows, stores cylinders. The dynamic
//! level shades each event's region nodes and adds a legend; the behavioral
//! level draws the event graph itself. With `elide_rtr`, hand-off plumbing —
//! a clean Release→Transfer[→Transfer]→Receive chain — collapses into one
//! labeled arrow between whatever flanks it, so interface diagrams read as
//! one arrow per data flow.
//!
//! Output is deterministic: everything is emitted in declaration order.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;

use tm_core::{ActionKind, CancelSpec, Model, Thimac};
use tm_validate::{validate_all, ValidationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderLevel {
    Static,
    Dynamic,
    Behavioral,
}

#[derive(Debug, Clone)]
pub struct RenderOptions {
    pub level: RenderLevel,
    /// Collapse release/transfer/receive hand-off chains to single arrows.
    pub elide_rtr: bool,
    /// Events to emphasize; empty means all. Must name declared events for
    /// the dynamic and behavioral levels.
    pub highlight: Vec<String>,
}

impl Default for RenderOptions {
    fn default() -> Self {
        Self {
            level: RenderLevel::Static,
            elide_rtr: false,
            highlight: Vec::new(),
        }
    }
}

#[derive(Debug)]
pub enum RenderError {
    /// Only validated models are drawn; the report says why this one is not.
    Invalid { report: ValidationReport },
    UnknownHighlight { id: String },
}

impl std::fmt::Display for RenderError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RenderError::Invalid { report } => write!(
                f,
                "model has {} validation error(s); fix them before rendering",
                report.error_count
            ),
            RenderError::UnknownHighlight { id } => {
                write!(f, "highlighted id `{id}` is not a declared event")
            }
        }
    }
}

impl std::error::Error for RenderError {}

const PALETTE: [&str; 8] = [
    "#ffd8a8", "#a5d8ff", "#b2f2bb", "#fcc2d7", "#ffec99", "#d0bfff", "#96f2d7", "#ffc9c9",
];

fn esc(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn to_dot(model: &Model, opts: &RenderOptions) -> Result<String, RenderError> {
    let report = validate_all(model);
    if report.has_errors() {
        return Err(RenderError::Invalid { report });
    }
    if opts.level != RenderLevel::Static {
        for id in &opts.highlight {
            if model.event(id).is_none() {
                return Err(RenderError::UnknownHighlight { id: id.clone() });
            }
        }
    }
    Ok(match opts.level {
        RenderLevel::Behavioral => behavioral_dot(model, opts),
        _ => leveled_dot(model, opts),
    })
}

fn header(g: &mut String, name: &str) {
    let _ = writeln!(g, "digraph {name} {{");
    let _ = writeln!(g, "  rankdir=LR;");
    let _ = writeln!(g, "  node [fontname=\"Helvetica\", shape=box];");
    let _ = writeln!(g, "  edge [fontname=\"Helvetica\"];");
}

// ---------------------------------------------------------------- behavioral

fn behavioral_dot(model: &Model, opts: &RenderOptions) -> String {
    let mut g = String::new();
    header(&mut g, &model.name);
    for e in &model.events {
        let mut label = format!("{}\\n{}", e.id, esc(&e.name));
        if let Some((a, b)) = e.window {
            let _ = write!(label, "\\ntime {a}..{b}");
        }
        let bold = if opts.highlight.contains(&e.id) {
            ", style=bold"
        } else {
            ""
        };
        let _ = writeln!(g, "  \"{}\" [label=\"{label}\"{bold}];", e.id);
    }
    for be in &model.behavior {
        let _ = writeln!(g, "  \"{}\" -> \"{}\";", be.from, be.to);
    }
    for e in &model.events {
        let targets: Vec<&str> = match &e.cancels {
            None => Vec::new(),
            Some(CancelSpec::All) => model
                .events
                .iter()
                .filter(|o| o.id != e.id)
                .map(|o| o.id.as_str())
                .collect(),
            Some(CancelSpec::Events(list)) => list.iter().map(String::as_str).collect(),
        };
        for t in targets {
            let _ = writeln!(
                g,
                "  \"{}\" -> \"{t}\" [style=dashed, label=\"not\"];",
                e.id
            );
        }
    }
    g.push_str("}\n");
    g
}

// ---------------------------------------------------------- static / dynamic

/// One end of a collapsed hand-off arrow: a surviving node, or the thimac a
/// chain starts or ends inside when nothing flanks it.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Anchor {
    Node(String),
    Thimac(String),
}

impl Anchor {
    fn dot_id(&self) -> String {
        match self {
            Anchor::Node(id) => format!("\"{id}\""),
            Anchor::Thimac(id) => format!("\"thimac {id}\""),
        }
    }
}

#[derive(Debug, Default)]
struct Elision {
    removed: BTreeSet<String>,
    edges: Vec<(Anchor, Anchor, String)>,
    anchored_thimacs: BTreeSet<String>,
}

/// Find every clean Release→Transfer[→Transfer]→Receive chain. Clean means:
/// no stores, no triggers, and strictly linear flow degrees, so removing the
/// chain loses nothing but the plumbing. Chains whose flanking node belongs
/// to another collapsed chain stay drawn in full, so arrows never point at
/// removed nodes.
fn compute_elision(model: &Model) -> Elision {
    let mut flows_in: HashMap<&str, Vec<&tm_core::FlowEdge>> = HashMap::new();
    let mut flows_out: HashMap<&str, Vec<&tm_core::FlowEdge>> = HashMap::new();
    for f in &model.flows {
        flows_out.entry(f.src.as_str()).or_default().push(f);
        flows_in.entry(f.dst.as_str()).or_default().push(f);
    }
    let mut triggered: HashSet<&str> = HashSet::new();
    for t in &model.triggers {
        triggered.insert(t.src.as_str());
        triggered.insert(t.dst.as_str());
    }
    let clean = |id: &str| {
        let a = model.action(id).expect("validated model");
        a.store.is_none() && !triggered.contains(id)
    };
    let ins = |id: &str| flows_in.get(id).map_or(0, |v| v.len());
    let outs = |id: &str| flows_out.get(id).map_or(0, |v| v.len());
    let step = |id: &str| flows_out.get(id).map(|v| v[0].dst.as_str());

    // A candidate: the node ids of one chain, in order.
    let mut candidates: Vec<Vec<String>> = Vec::new();
    for a in &model.actions {
        if a.kind != ActionKind::Release || !clean(&a.id) || ins(&a.id) > 1 || outs(&a.id) != 1 {
            continue;
        }
        let mut chain = vec![a.id.clone()];
        let mut cursor = step(&a.id).unwrap();
        let mut ok = false;
        // After the release: one or two clean pass-through transfers, then a
        // clean receive with at most one exit.
        for hop in 0..3 {
            let kind = model.action(cursor).expect("validated model").kind;
            match kind {
                ActionKind::Transfer
                    if hop < 2 && clean(cursor) && ins(cursor) == 1 && outs(cursor) == 1 =>
                {
                    chain.push(cursor.to_owned());
                    cursor = step(cursor).unwrap();
                }
                ActionKind::Receive
                    if hop > 0 && clean(cursor) && ins(cursor) == 1 && outs(cursor) <= 1 =>
                {
                    chain.push(cursor.to_owned());
                    ok = true;
                    break;
                }
                _ => break,
            }
        }
        if ok {
            candidates.push(chain);
        }
    }

    // Keep only chains whose flanks survive. Dropping one chain un-removes
    // its nodes, which can rescue a neighbor, so iterate to a fixpoint.
    let mut admitted: Vec<bool> = vec![true; candidates.len()];
    loop {
        let removed: HashSet<&str> = candidates
            .iter()
            .zip(&admitted)
            .filter(|(_, keep)| **keep)
            .flat_map(|(c, _)| c.iter().map(String::as_str))
            .collect();
        let reject = candidates.iter().enumerate().position(|(i, chain)| {
            if !admitted[i] {
                return false;
            }
            let before = flows_in
                .get(chain[0].as_str())
                .map(|v| v[0].src.as_str());
            let after = flows_out
                .get(chain.last().unwrap().as_str())
                .map(|v| v[0].dst.as_str());
            let own: HashSet<&str> = chain.iter().map(String::as_str).collect();
            [before, after]
                .into_iter()
                .flatten()
                .any(|flank| own.contains(flank) || removed.contains(flank))
        });
        match reject {
            Some(i) => admitted[i] = false,
            None => break,
        }
    }

    let mut elision = Elision::default();
    for (chain, keep) in candidates.iter().zip(&admitted) {
        if !keep {
            continue;
        }
        let first = chain.first().unwrap();
        let last = chain.last().unwrap();
        let from = match flows_in.get(first.as_str()) {
            Some(v) => Anchor::Node(v[0].src.clone()),
            None => Anchor::Thimac(model.action(first).unwrap().owner.clone()),
        };
        let to = match flows_out.get(last.as_str()) {
            Some(v) => Anchor::Node(v[0].dst.clone()),
            None => Anchor::Thimac(model.action(last).unwrap().owner.clone()),
        };
        let label = chain
            .iter()
            .find_map(|id| model.action(id).unwrap().label.clone())
            .unwrap_or_default();
        for anchor in [&from, &to] {
            if let Anchor::Thimac(t) = anchor {
                elision.anchored_thimacs.insert(t.clone());
            }
        }
        elision.removed.extend(chain.iter().cloned());
        elision.edges.push((from, to, label));
    }
    elision
}

struct Shading {
    fill: BTreeMap<String, &'static str>,
    legend: Vec<(String, String, &'static str)>,
}

/// Dynamic level: each rendered event gets a palette color keyed to its
/// declaration index, region nodes take the first covering event's color.
fn compute_shading(model: &Model, opts: &RenderOptions) -> Shading {
    let mut fill = BTreeMap::new();
    let mut legend = Vec::new();
    for (i, e) in model.events.iter().enumerate() {
        if !opts.highlight.is_empty() && !opts.highlight.contains(&e.id) {
            continue;
        }
        let color = PALETTE[i % PALETTE.len()];
        let mut entry = format!("{}: {}", e.id, e.name);
        if let Some((a, b)) = e.window {
            let _ = write!(entry, " (time {a}..{b})");
        }
        legend.push((e.id.clone(), entry, color));
        for member in &e.region {
            fill.entry(member.clone()).or_insert(color);
        }
    }
    Shading { fill, legend }
}

fn emit_thimac(
    g: &mut String,
    model: &Model,
    t: &Thimac,
    depth: usize,
    elision: &Elision,
    shading: &Shading,
) {
    let pad = "  ".repeat(depth);
    let _ = writeln!(g, "{pad}subgraph cluster_{} {{", t.id);
    let display = t.name.as_deref().unwrap_or(&t.id);
    let _ = writeln!(g, "{pad}  label=\"{}\";", esc(display));
    let _ = writeln!(g, "{pad}  style=rounded;");
    for s in model.stores_owned_by(&t.id) {
        let _ = writeln!(g, "{pad}  \"store {}\" [label=\"{}\", shape=cylinder];", s.id, s.id);
    }
    for id in &t.actions {
        if elision.removed.contains(id) {
            continue;
        }
        let a = model.action(id).expect("owned action is declared");
        let mut label = format!("{}\\n{}", a.id, a.kind);
        if let Some(text) = &a.label {
            let _ = write!(label, " \\\"{}\\\"", esc(text));
        }
        let paint = match shading.fill.get(id) {
            Some(color) => format!(", style=filled, fillcolor=\"{color}\""),
            None => String::new(),
        };
        let _ = writeln!(g, "{pad}  \"{id}\" [label=\"{label}\"{paint}];");
    }
    if elision.anchored_thimacs.contains(&t.id) {
        let _ = writeln!(
            g,
            "{pad}  \"thimac {}\" [label=\"{}\", style=bold];",
            t.id,
            esc(display)
        );
    }
    for child in &t.children {
        let child = model.thimac(child).expect("nested thimac is declared");
        emit_thimac(g, model, child, depth + 1, elision, shading);
    }
    let _ = writeln!(g, "{pad}}}");
}

fn leveled_dot(model: &Model, opts: &RenderOptions) -> String {
    let elision = if opts.elide_rtr {
        compute_elision(model)
    } else {
        Elision::default()
    };
    let shading = if opts.level == RenderLevel::Dynamic {
        compute_shading(model, opts)
    } else {
        Shading {
            fill: BTreeMap::new(),
            legend: Vec::new(),
        }
    };

    let mut g = String::new();
    header(&mut g, &model.name);
    for t in model.top_level_thimacs() {
        emit_thimac(&mut g, model, t, 1, &elision, &shading);
    }
    for f in &model.flows {
        if elision.removed.contains(&f.src) || elision.removed.contains(&f.dst) {
            continue;
        }
        let _ = writeln!(g, "  \"{}\" -> \"{}\";", f.src, f.dst);
    }
    for (from, to, label) in &elision.edges {
        let tag = if label.is_empty() {
            String::new()
        } else {
            format!(" [label=\"{}\"]", esc(label))
        };
        let _ = writeln!(g, "  {} -> {}{tag};", from.dot_id(), to.dot_id());
    }
    for t in &model.triggers {
        let guard = match &t.guard {
            Some(gd) => format!("{} {} \\\"{}\\\"", gd.store, gd.op.symbol(), esc(&gd.value)),
            None => String::new(),
        };
        let _ = writeln!(
            g,
            "  \"{}\" -> \"{}\" [style=dashed, label=\"{guard}\"];",
            t.src, t.dst
        );
    }
    for a in &model.actions {
        if let Some(store) = &a.store {
            if !elision.removed.contains(&a.id) {
                let _ = writeln!(
                    g,
                    "  \"{}\" -> \"store {store}\" [style=dotted, arrowhead=none];",
                    a.id
                );
            }
        }
    }
    if !shading.legend.is_empty() {
        let _ = writeln!(g, "  subgraph cluster_legend {{");
        let _ = writeln!(g, "    label=\"events\";");
        for (id, entry, color) in &shading.legend {
            let _ = writeln!(
                g,
                "    \"legend {id}\" [label=\"{}\", style=filled, fillcolor=\"{color}\"];",
                esc(entry)
            );
        }
        let _ = writeln!(g, "  }}");
    }
    g.push_str("}\n");
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use tm_core::ModelBuilder;

    fn edge_count(dot: &str) -> usize {
        dot.lines().filter(|l| l.contains(" -> ")).count()
    }

    fn chain_model() -> Model {
        // sender { make, r, t_out } | receiver { t_in, rcv, use }
        let mut b = ModelBuilder::new("m").unwrap();
        b.thimac("sender", None, None).unwrap();
        b.thimac("receiver", None, None).unwrap();
        b.action("make", ActionKind::Create, "sender", None, Some("parcel")).unwrap();
        b.action("rel", ActionKind::Release, "sender", None, None).unwrap();
        b.action("t_out", ActionKind::Transfer, "sender", None, None).unwrap();
        b.action("t_in", ActionKind::Transfer, "receiver", None, None).unwrap();
        b.action("rcv", ActionKind::Receive, "receiver", None, Some("parcel")).unwrap();
        b.action("use", ActionKind::Process, "receiver", None, None).unwrap();
        b.flow("make", "rel").unwrap();
        b.flow("rel", "t_out").unwrap();
        b.flow("t_out", "t_in").unwrap();
        b.flow("t_in", "rcv").unwrap();
        b.flow("rcv", "use").unwrap();
        b.build()
    }

    #[test]
    fn empty_model_is_still_a_graph() {
        let m = ModelBuilder::new("void").unwrap().build();
        let dot = to_dot(&m, &RenderOptions::default()).unwrap();
        assert!(dot.starts_with("digraph void {\n"));
        assert!(dot.ends_with("}\n"));
        assert_eq!(edge_count(&dot), 0);
    }

    #[test]
    fn invalid_models_are_refused_with_their_report() {
        let mut b = ModelBuilder::new("m").unwrap();
        b.thimac("t", None, None).unwrap();
        b.flow("ghost", "phantom").unwrap();
        let err = to_dot(&b.build(), &RenderOptions::default()).unwrap_err();
        match err {
            RenderError::Invalid { report } => assert!(report.error_count > 0),
            other => panic!("wrong error: {other:?}"),
        }
    }

    #[test]
    fn static_level_draws_every_edge_kind() {
        let mut b = ModelBuilder::new("m").unwrap();
        b.thimac("t", Some("The Thing"), None).unwrap();
        b.store("st", "t").unwrap();
        b.action("c", ActionKind::Create, "t", Some("st"), Some("x")).unwrap();
        b.action("p", ActionKind::Process, "t", None, None).unwrap();
        b.flow("c", "p").unwrap();
        b.trigger("p", "c", Some(tm_core::Guard {
            store: "st".into(),
            op: tm_core::GuardOp::Equals,
            value: "x".into(),
        })).unwrap();
        let dot = to_dot(&b.build(), &RenderOptions::default()).unwrap();
        assert!(dot.contains("subgraph cluster_t {"));
        assert!(dot.contains("label=\"The Thing\";"));
        assert!(dot.contains("\"store st\" [label=\"st\", shape=cylinder];"));
        assert!(dot.contains("\"c\" -> \"p\";"));
        assert!(dot.contains("\"p\" -> \"c\" [style=dashed, label=\"st == \\\"x\\\"\"];"));
        assert!(dot.contains("\"c\" -> \"store st\" [style=dotted, arrowhead=none];"));
    }

    #[test]
    fn nested_thimacs_nest_their_clusters() {
        let mut b = ModelBuilder::new("m").unwrap();
        b.thimac("outer", None, None).unwrap();
        b.thimac("inner", None, Some("outer")).unwrap();
        let dot = to_dot(&b.build(), &RenderOptions::default()).unwrap();
        // The child cluster sits one indent level deeper, inside its parent.
        let inner = dot.find("    subgraph cluster_inner {").unwrap();
        let outer_open = dot.find("  subgraph cluster_outer {").unwrap();
        let outer_close = dot[inner..].find("\n  }").unwrap() + inner;
        assert!(outer_open < inner && inner < outer_close);
    }

    #[test]
    fn elision_collapses_a_flanked_chain_to_one_labeled_edge() {
        let dot = to_dot(
            &chain_model(),
            &RenderOptions {
                elide_rtr: true,
                ..RenderOptions::default()
            },
        )
        .unwrap();
        assert!(dot.contains("\"make\" -> \"use\" [label=\"parcel\"];"), "{dot}");
        for gone in ["\"rel\"", "\"t_out\"", "\"t_in\"", "\"rcv\""] {
            assert!(!dot.contains(gone));
        }
        assert_eq!(edge_count(&dot), 1);
    }

    #[test]
    fn elision_without_flanks_anchors_on_the_thimacs() {
        let mut b = ModelBuilder::new("m").unwrap();
        b.thimac("a", None, None).unwrap();
        b.thimac("b", None, None).unwrap();
        b.action("rel", ActionKind::Release, "a", None, Some("ping")).unwrap();
        b.action("out", ActionKind::Transfer, "a", None, None).unwrap();
        b.action("inn", ActionKind::Transfer, "b", None, None).unwrap();
        b.action("rcv", ActionKind::Receive, "b", None, None).unwrap();
        b.flow("rel", "out").unwrap();
        b.flow("out", "inn").unwrap();
        b.flow("inn", "rcv").unwrap();
        let dot = to_dot(
            &b.build(),
            &RenderOptions {
                elide_rtr: true,
                ..RenderOptions::default()
            },
        )
        .unwrap();
        assert!(dot.contains("\"thimac a\" -> \"thimac b\" [label=\"ping\"];"));
        assert_eq!(edge_count(&dot), 1);
    }

    #[test]
    fn dirty_chains_stay_drawn() {
        // A store attachment on the receive makes the chain worth seeing.
        let mut b = ModelBuilder::new("m").unwrap();
        b.thimac("a", None, None).unwrap();
        b.store("log", "a").unwrap();
        b.action("rel", ActionKind::Release, "a", None, None).unwrap();
        b.action("out", ActionKind::Transfer, "a", None, None).unwrap();
        b.action("rcv", ActionKind::Receive, "a", Some("log"), None).unwrap();
        b.flow("rel", "out").unwrap();
        b.flow("out", "rcv").unwrap();
        let dot = to_dot(
            &b.build(),
            &RenderOptions {
                elide_rtr: true,
                ..RenderOptions::default()
            },
        )
        .unwrap();
        assert!(dot.contains("\"rel\" -> \"out\";"));
        assert_eq!(edge_count(&dot), 3); // two flows + the attachment
    }

    #[test]
    fn behavioral_level_draws_events_successions_and_cancels() {
        let mut b = ModelBuilder::new("m").unwrap();
        b.thimac("t", None, None).unwrap();
        b.action("x", ActionKind::Create, "t", None, None).unwrap();
        b.action("y", ActionKind::Process, "t", None, None).unwrap();
        b.flow("x", "y").unwrap();
        b.event("E1", "first", &["x"], Some((1, 9)), None).unwrap();
        b.event("E2", "second", &["y"], None, None).unwrap();
        b.event("E3", "veto", &["y"], None, Some(CancelSpec::All)).unwrap();
        b.behavior("E1", "E2").unwrap();
        let dot = to_dot(
            &b.build(),
            &RenderOptions {
                level: RenderLevel::Behavioral,
                ..RenderOptions::default()
            },
        )
        .unwrap();
        assert!(dot.contains("\"E1\" [label=\"E1\\nfirst\\ntime 1..9\"];"));
        assert!(dot.contains("\"E1\" -> \"E2\";"));
        assert!(dot.contains("\"E3\" -> \"E1\" [style=dashed, label=\"not\"];"));
        assert!(dot.contains("\"E3\" -> \"E2\" [style=dashed, label=\"not\"];"));
        assert!(!dot.contains("\"E3\" -> \"E3\""));
        assert_eq!(edge_count(&dot), 3);
    }

    #[test]
    fn dynamic_level_shades_regions_and_adds_a_legend() {
        let mut b = ModelBuilder::new("m").unwrap();
        b.thimac("t", None, None).unwrap();
        b.action("x", ActionKind::Create, "t", None, None).unwrap();
        b.action("y", ActionKind::Process, "t", None, None).unwrap();
        b.flow("x", "y").unwrap();
        b.event("E1", "first", &["x"], None, None).unwrap();
        b.event("E2", "both", &["x", "y"], None, None).unwrap();
        let model = b.build();
        let dot = to_dot(
            &model,
            &RenderOptions {
                level: RenderLevel::Dynamic,
                ..RenderOptions::default()
            },
        )
        .unwrap();
        // x belongs to E1 first, so it takes E1's color; y falls to E2.
        assert!(dot.contains(&format!("\"x\" [label=\"x\\ncreate\", style=filled, fillcolor=\"{}\"];", PALETTE[0])));
        assert!(dot.contains(&format!("\"y\" [label=\"y\\nprocess\", style=filled, fillcolor=\"{}\"];", PALETTE[1])));
        assert!(dot.contains("subgraph cluster_legend {"));
        assert!(dot.contains("\"legend E1\""));

        // Highlighting narrows the shading but keeps stable colors.
        let dot = to_dot(
            &model,
            &RenderOptions {
                level: RenderLevel::Dynamic,
                highlight: vec!["E2".into()],
                ..RenderOptions::default()
            },
        )
        .unwrap();
        assert!(dot.contains(&format!("\"x\" [label=\"x\\ncreate\", style=filled, fillcolor=\"{}\"];", PALETTE[1])));
        assert!(!dot.contains("\"legend E1\""));
        assert!(dot.contains("\"legend E2\""));
    }

    #[test]
    fn highlight_must_name_events_outside_the_static_level() {
        let model = chain_model();
        let err = to_dot(
            &model,
            &RenderOptions {
                level: RenderLevel::Dynamic,
                highlight: vec!["nope".into()],
                ..RenderOptions::default()
            },
        )
        .unwrap_err();
        assert!(matches!(err, RenderError::UnknownHighlight { .. }));
        // The static level ignores the list entirely.
        assert!(to_dot(
            &model,
            &RenderOptions {
                highlight: vec!["nope".into()],
                ..RenderOptions::default()
            },
        )
        .is_ok());
    }

    #[test]
    fn back_to_back_chains_collapse_only_the_downstream_one() {
        // rel1..rcv1 -> rel2..rcv2: rcv1 flanks the second chain, so the
        // first stays drawn and the second collapses onto it.
        let mut b = ModelBuilder::new("m").unwrap();
        b.thimac("a", None, None).unwrap();
        b.thimac("b", None, None).unwrap();
        for (id, kind, owner) in [
            ("rel1", ActionKind::Release, "a"),
            ("out1", ActionKind::Transfer, "a"),
            ("rcv1", ActionKind::Receive, "b"),
            ("rel2", ActionKind::Release, "b"),
            ("out2", ActionKind::Transfer, "b"),
            ("rcv2", ActionKind::Receive, "a"),
        ] {
            b.action(id, kind, owner, None, None).unwrap();
        }
        b.flow("rel1", "out1").unwrap();
        b.flow("out1", "rcv1").unwrap();
        b.flow("rcv1", "rel2").unwrap();
        b.flow("rel2", "out2").unwrap();
        b.flow("out2", "rcv2").unwrap();
        let dot = to_dot(
            &b.build(),
            &RenderOptions {
                elide_rtr: true,
                ..RenderOptions::default()
            },
        )
        .unwrap();
        assert!(dot.contains("\"rel1\" -> \"out1\";"));
        assert!(dot.contains("\"out1\" -> \"rcv1\";"));
        assert!(dot.contains("\"rcv1\" -> \"thimac a\""), "{dot}");
        assert_eq!(edge_count(&dot), 3);
    }
}
