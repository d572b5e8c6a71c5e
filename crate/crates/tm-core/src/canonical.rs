//! Canonical ordering of models, and the order-insensitive equality built
//! on top of it.
//!
//! Declaration order is semantically load-bearing for the simulator (it
//! breaks ties), but two models that differ only in declaration order
//! describe the same structure. `canonicalize` rewrites a model into a
//! content-derived order — everything sorted by id or endpoints — so that
//! structural equality is plain equality of canonical forms, and so that the
//! textual serializer can emit byte-identical output for structurally equal
//! models.

use std::collections::HashSet;

use crate::model::{CancelSpec, Model, Thimac};

/// Rewrite `model` into canonical order. Idempotent. Membership is
/// preserved exactly; only ordering changes. Child and action lists inside
/// thimacs are re-derived from the authoritative `parent`/`owner` fields,
/// which also makes the function total on hand-assembled models whose lists
/// disagree with those fields.
pub fn canonicalize(model: &Model) -> Model {
    let mut out = Model {
        name: model.name.clone(),
        ..Model::default()
    };

    // Thimac forest in pre-order, siblings sorted by id. Thimacs whose
    // parent does not resolve are treated as roots; cycle members that an
    // ordinary walk can never reach are appended at the end, sorted, so the
    // function stays total (the validator reports such models separately).
    let ids: HashSet<&str> = model.thimacs.iter().map(|t| t.id.as_str()).collect();
    let mut roots: Vec<&Thimac> = model
        .thimacs
        .iter()
        .filter(|t| match &t.parent {
            None => true,
            Some(p) => !ids.contains(p.as_str()),
        })
        .collect();
    roots.sort_by(|a, b| a.id.cmp(&b.id));
    let mut visited: HashSet<&str> = HashSet::new();
    let mut order: Vec<&Thimac> = Vec::new();
    fn walk<'a>(
        t: &'a Thimac,
        model: &'a Model,
        visited: &mut HashSet<&'a str>,
        order: &mut Vec<&'a Thimac>,
    ) {
        if !visited.insert(&t.id) {
            return;
        }
        order.push(t);
        let mut children: Vec<&Thimac> = model
            .thimacs
            .iter()
            .filter(|c| c.parent.as_deref() == Some(t.id.as_str()))
            .collect();
        children.sort_by(|a, b| a.id.cmp(&b.id));
        for child in children {
            walk(child, model, visited, order);
        }
    }
    for root in roots {
        walk(root, model, &mut visited, &mut order);
    }
    let mut leftover: Vec<&Thimac> = model
        .thimacs
        .iter()
        .filter(|t| !visited.contains(t.id.as_str()))
        .collect();
    leftover.sort_by(|a, b| a.id.cmp(&b.id));
    order.extend(leftover);

    for t in order {
        let mut children: Vec<String> = model
            .thimacs
            .iter()
            .filter(|c| c.parent.as_deref() == Some(t.id.as_str()))
            .map(|c| c.id.clone())
            .collect();
        children.sort();
        let mut actions: Vec<String> = model
            .actions
            .iter()
            .filter(|a| a.owner == t.id)
            .map(|a| a.id.clone())
            .collect();
        actions.sort();
        out.thimacs.push(Thimac {
            id: t.id.clone(),
            name: t.name.clone(),
            parent: t.parent.clone(),
            children,
            actions,
        });
    }

    out.actions = model.actions.clone();
    out.actions.sort_by(|a, b| a.id.cmp(&b.id));
    out.stores = model.stores.clone();
    out.stores.sort_by(|a, b| a.id.cmp(&b.id));
    out.flows = model.flows.clone();
    out.flows.sort();
    out.triggers = model.triggers.clone();
    out.triggers.sort();
    out.events = model.events.clone();
    for event in &mut out.events {
        event.region.sort();
        if let Some(CancelSpec::Events(targets)) = &mut event.cancels {
            targets.sort();
        }
    }
    out.events.sort_by(|a, b| a.id.cmp(&b.id));
    out.behavior = model.behavior.clone();
    out.behavior.sort();
    out
}

/// Order-insensitive equality: the two models are identical up to element
/// ordering. This is an equivalence relation.
pub fn structural_eq(a: &Model, b: &Model) -> bool {
    canonicalize(a) == canonicalize(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder::ModelBuilder;
    use crate::model::{ActionKind, Guard, GuardOp};

    fn sample(flip: bool) -> Model {
        // Two declaration orders of the same structure.
        let mut b = ModelBuilder::new("m").unwrap();
        b.thimac("z", None, None).unwrap();
        b.thimac("a", None, None).unwrap();
        if flip {
            b.action("p2", ActionKind::Process, "a", None, None).unwrap();
            b.action("p1", ActionKind::Create, "z", None, None).unwrap();
        } else {
            b.action("p1", ActionKind::Create, "z", None, None).unwrap();
            b.action("p2", ActionKind::Process, "a", None, None).unwrap();
        }
        b.flow("p1", "p2").unwrap();
        let g = Guard {
            store: "s".into(),
            op: GuardOp::Equals,
            value: "v".into(),
        };
        b.trigger("p2", "p1", Some(g)).unwrap();
        b.event("E1", "one", &["p1", "p2"], None, None).unwrap();
        b.build()
    }

    #[test]
    fn declaration_order_is_normalized_away() {
        assert!(structural_eq(&sample(false), &sample(true)));
        assert_eq!(canonicalize(&sample(false)), canonicalize(&sample(true)));
    }

    #[test]
    fn canonicalize_is_idempotent() {
        let once = canonicalize(&sample(true));
        assert_eq!(once, canonicalize(&once));
    }

    #[test]
    fn content_changes_are_detected() {
        let base = sample(false);
        let mut other = base.clone();
        other.triggers[0].guard.as_mut().unwrap().op = GuardOp::NotEquals;
        assert!(!structural_eq(&base, &other));

        let mut missing = base.clone();
        missing.flows.clear();
        assert!(!structural_eq(&base, &missing));
    }
}
