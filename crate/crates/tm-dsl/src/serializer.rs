//! Canonical text emission. The output of `serialize` depends only on the
//! structure of the model, never on declaration order, so structurally equal
//! models serialize to byte-identical text and `serialize` is a fixed point
//! over parse/serialize cycles.

use std::fmt::Write as _;

use thiserror::Error;
use tm_core::{canonicalize, is_identifier, is_quotable_text, CancelSpec, Model, Thimac};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SerializeError {
    /// A store or action names an owner thimac, or a thimac names a parent,
    /// that is not declared in the model.
    #[error("{kind} `{id}` is owned by `{owner}`, which is not declared")]
    UnknownOwner {
        kind: &'static str,
        id: String,
        owner: String,
    },
    #[error("{what} `{text}` is not a valid identifier")]
    BadIdentifier { what: &'static str, text: String },
    #[error("{what} contains a quote or line break: {text:?}")]
    BadText { what: &'static str, text: String },
    #[error("event `{event}` has an empty cancel list, which has no written form")]
    EmptyCancelList { event: String },
    /// Thimac nesting must be a forest to be written as nested blocks.
    #[error("thimac `{id}` is caught in a parent cycle")]
    OwnershipCycle { id: String },
}

/// Render `model` as canonical source text: LF line endings, two-space
/// indentation, one trailing newline, every list in content-derived order.
pub fn serialize(model: &Model) -> Result<String, SerializeError> {
    let m = canonicalize(model);
    check(&m)?;

    let mut out = String::new();
    let _ = writeln!(out, "model {}", m.name);

    for th in m.top_level_thimacs() {
        out.push('\n');
        thimac_block(&m, th, 0, &mut out);
    }

    if !m.flows.is_empty() {
        out.push('\n');
        for f in &m.flows {
            let _ = writeln!(out, "flow {} -> {}", f.src, f.dst);
        }
    }

    if !m.triggers.is_empty() {
        out.push('\n');
        for t in &m.triggers {
            let _ = write!(out, "trigger {} -> {}", t.src, t.dst);
            if let Some(g) = &t.guard {
                let _ = write!(out, " if {} {} \"{}\"", g.store, g.op.symbol(), g.value);
            }
            out.push('\n');
        }
    }

    if !m.events.is_empty() {
        out.push('\n');
        for e in &m.events {
            let _ = write!(out, "event {} \"{}\" region {{", e.id, e.name);
            for member in &e.region {
                let _ = write!(out, " {member}");
            }
            out.push_str(" }");
            if let Some((start, end)) = e.window {
                let _ = write!(out, " time {start}..{end}");
            }
            match &e.cancels {
                Some(CancelSpec::All) => out.push_str(" cancels all"),
                Some(CancelSpec::Events(targets)) => {
                    out.push_str(" cancels {");
                    for target in targets {
                        let _ = write!(out, " {target}");
                    }
                    out.push_str(" }");
                }
                None => {}
            }
            out.push('\n');
        }
    }

    if !m.behavior.is_empty() {
        out.push('\n');
        for b in &m.behavior {
            let _ = writeln!(out, "behavior {} -> {}", b.from, b.to);
        }
    }

    Ok(out)
}

fn thimac_block(m: &Model, th: &Thimac, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    let _ = write!(out, "{pad}thimac {}", th.id);
    if let Some(name) = &th.name {
        let _ = write!(out, " \"{name}\"");
    }
    let stores: Vec<_> = m.stores_owned_by(&th.id).collect();
    if stores.is_empty() && th.actions.is_empty() && th.children.is_empty() {
        out.push_str(" { }\n");
        return;
    }
    out.push_str(" {\n");
    let inner = "  ".repeat(depth + 1);
    for store in stores {
        let _ = writeln!(out, "{inner}store {}", store.id);
    }
    for aid in &th.actions {
        // check() guarantees the lookup succeeds.
        let a = m.action(aid).expect("owned action is declared");
        let _ = write!(out, "{inner}action {} {}", a.id, a.kind.keyword());
        if let Some(store) = &a.store {
            let _ = write!(out, " @store({store})");
        }
        if let Some(label) = &a.label {
            let _ = write!(out, " \"{label}\"");
        }
        out.push('\n');
    }
    for cid in &th.children {
        let child = m.thimac(cid).expect("child thimac is declared");
        thimac_block(m, child, depth + 1, out);
    }
    let _ = writeln!(out, "{pad}}}");
}

fn check(m: &Model) -> Result<(), SerializeError> {
    let ident = |what: &'static str, text: &str| -> Result<(), SerializeError> {
        if is_identifier(text) {
            Ok(())
        } else {
            Err(SerializeError::BadIdentifier {
                what,
                text: text.to_owned(),
            })
        }
    };
    let text = |what: &'static str, value: &str| -> Result<(), SerializeError> {
        if is_quotable_text(value) {
            Ok(())
        } else {
            Err(SerializeError::BadText {
                what,
                text: value.to_owned(),
            })
        }
    };
    let owner = |kind: &'static str, id: &str, owner: &str| -> Result<(), SerializeError> {
        if m.thimac(owner).is_some() {
            Ok(())
        } else {
            Err(SerializeError::UnknownOwner {
                kind,
                id: id.to_owned(),
                owner: owner.to_owned(),
            })
        }
    };

    ident("model name", &m.name)?;
    for th in &m.thimacs {
        ident("thimac id", &th.id)?;
        if let Some(name) = &th.name {
            text("thimac name", name)?;
        }
        if let Some(parent) = &th.parent {
            owner("thimac", &th.id, parent)?;
        }
    }
    // Nesting must reach every thimac from some root, or blocks cannot be
    // written; canonicalize appends cycle members at the end unparented, so
    // detect them by walking the forest.
    let mut reached = 0usize;
    let mut stack: Vec<&str> = m.top_level_thimacs().map(|t| t.id.as_str()).collect();
    let mut seen = std::collections::HashSet::new();
    while let Some(id) = stack.pop() {
        if !seen.insert(id) {
            continue;
        }
        reached += 1;
        if let Some(t) = m.thimac(id) {
            stack.extend(t.children.iter().map(String::as_str));
        }
    }
    if reached < m.thimacs.len() {
        let stranded = m
            .thimacs
            .iter()
            .find(|t| !seen.contains(t.id.as_str()))
            .expect("some thimac was not reached");
        return Err(SerializeError::OwnershipCycle {
            id: stranded.id.clone(),
        });
    }
    for s in &m.stores {
        ident("store id", &s.id)?;
        owner("store", &s.id, &s.owner)?;
    }
    for a in &m.actions {
        ident("action id", &a.id)?;
        owner("action", &a.id, &a.owner)?;
        if let Some(store) = &a.store {
            ident("store reference", store)?;
        }
        if let Some(label) = &a.label {
            text("action label", label)?;
        }
    }
    for f in &m.flows {
        ident("flow endpoint", &f.src)?;
        ident("flow endpoint", &f.dst)?;
    }
    for t in &m.triggers {
        ident("trigger endpoint", &t.src)?;
        ident("trigger endpoint", &t.dst)?;
        if let Some(g) = &t.guard {
            ident("guard store", &g.store)?;
            text("guard value", &g.value)?;
        }
    }
    for e in &m.events {
        ident("event id", &e.id)?;
        text("event name", &e.name)?;
        for member in &e.region {
            ident("region member", member)?;
        }
        match &e.cancels {
            Some(CancelSpec::Events(targets)) if targets.is_empty() => {
                return Err(SerializeError::EmptyCancelList {
                    event: e.id.clone(),
                });
            }
            Some(CancelSpec::Events(targets)) => {
                for target in targets {
                    ident("cancel target", target)?;
                }
            }
            _ => {}
        }
    }
    for b in &m.behavior {
        ident("behavior endpoint", &b.from)?;
        ident("behavior endpoint", &b.to)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;
    use tm_core::{structural_eq, ActionKind, ModelBuilder};

    fn sample() -> Model {
        let mut b = ModelBuilder::new("sample").unwrap();
        b.thimac("outer", Some("The Outside"), None).unwrap();
        b.thimac("inner", None, Some("outer")).unwrap();
        b.store("level", "outer").unwrap();
        b.action("make", ActionKind::Create, "outer", Some("level"), Some("fresh"))
            .unwrap();
        b.action("push", ActionKind::Transfer, "inner", None, None)
            .unwrap();
        b.flow("make", "push").unwrap();
        b.event("E1", "made", &["make", "push"], Some((0, 9)), None)
            .unwrap();
        b.event("E2", "noted", &[], None, Some(CancelSpec::All))
            .unwrap();
        b.behavior("E1", "E2").unwrap();
        b.build()
    }

    #[test]
    fn emits_expected_layout() {
        let text = serialize(&sample()).unwrap();
        let expected = "model sample\n\
                        \n\
                        thimac outer \"The Outside\" {\n\
                        \x20 store level\n\
                        \x20 action make create @store(level) \"fresh\"\n\
                        \x20 thimac inner {\n\
                        \x20   action push transfer\n\
                        \x20 }\n\
                        }\n\
                        \n\
                        flow make -> push\n\
                        \n\
                        event E1 \"made\" region { make push } time 0..9\n\
                        event E2 \"noted\" region { } cancels all\n\
                        \n\
                        behavior E1 -> E2\n";
        assert_eq!(text, expected);
    }

    #[test]
    fn round_trips_through_parser() {
        let m = sample();
        let text = serialize(&m).unwrap();
        let back = parse(&text).unwrap();
        assert!(structural_eq(&m, &back));
        assert_eq!(serialize(&back).unwrap(), text);
    }

    #[test]
    fn output_ignores_declaration_order() {
        let mut b = ModelBuilder::new("sample").unwrap();
        b.thimac("outer", Some("The Outside"), None).unwrap();
        b.action("make", ActionKind::Create, "outer", Some("level"), Some("fresh"))
            .unwrap();
        b.store("level", "outer").unwrap();
        b.thimac("inner", None, Some("outer")).unwrap();
        b.action("push", ActionKind::Transfer, "inner", None, None)
            .unwrap();
        b.event("E2", "noted", &[], None, Some(CancelSpec::All))
            .unwrap();
        b.event("E1", "made", &["push", "make"], Some((0, 9)), None)
            .unwrap();
        b.behavior("E1", "E2").unwrap();
        b.flow("make", "push").unwrap();
        let reordered = b.build();
        assert_eq!(
            serialize(&reordered).unwrap(),
            serialize(&sample()).unwrap()
        );
    }

    #[test]
    fn refuses_unwritable_models() {
        let mut dangling = sample();
        dangling.actions[0].owner = "ghost".into();
        assert!(matches!(
            serialize(&dangling),
            Err(SerializeError::UnknownOwner { .. })
        ));

        let mut cyclic = sample();
        cyclic.thimacs[0].parent = Some("inner".into());
        assert!(matches!(
            serialize(&cyclic),
            Err(SerializeError::OwnershipCycle { .. })
        ));

        let mut empty_cancels = sample();
        empty_cancels.events[1].cancels = Some(CancelSpec::Events(Vec::new()));
        assert!(matches!(
            serialize(&empty_cancels),
            Err(SerializeError::EmptyCancelList { .. })
        ));
    }

    #[test]
    fn empty_thimac_is_a_one_liner() {
        let mut b = ModelBuilder::new("m").unwrap();
        b.thimac("bare", None, None).unwrap();
        let text = serialize(&b.build()).unwrap();
        assert_eq!(text, "model m\n\nthimac bare { }\n");
        assert!(parse(&text).is_ok());
    }
}
