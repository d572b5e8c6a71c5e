//! The three validation passes. Each is pure and total: models with dangling
//! references are never a precondition violation, they are findings (S0, S5,
//! D1, D5, B3), and every other rule simply skips elements it cannot
//! resolve so one broken reference does not cascade into noise.

use std::collections::{HashMap, HashSet};

use tm_core::{successor_allowed, ActionKind, ActionNode, CancelSpec, Model};

use crate::diagnostic::{Diagnostic, Rule};

fn push(out: &mut Vec<Diagnostic>, rule: Rule, subjects: &[&str], message: String) {
    out.push(Diagnostic::new(
        rule,
        subjects.iter().map(|s| (*s).to_owned()).collect(),
        message,
    ));
}

/// Static level: node kinds, flow legality, and reference integrity.
pub fn validate_static(model: &Model) -> Vec<Diagnostic> {
    let actions: HashMap<&str, &ActionNode> =
        model.actions.iter().map(|a| (a.id.as_str(), a)).collect();
    let thimacs: HashSet<&str> = model.thimacs.iter().map(|t| t.id.as_str()).collect();
    let stores: HashSet<&str> = model.stores.iter().map(|s| s.id.as_str()).collect();

    let mut s0 = Vec::new();
    for t in &model.thimacs {
        if let Some(parent) = &t.parent {
            if !thimacs.contains(parent.as_str()) {
                push(
                    &mut s0,
                    Rule::S0,
                    &[&t.id, parent],
                    format!("thimac `{}` is nested in undeclared thimac `{parent}`", t.id),
                );
            }
        }
    }
    // Parent links must form a forest; walk up from each thimac and flag the
    // ones that come back to themselves.
    let parent_of: HashMap<&str, &str> = model
        .thimacs
        .iter()
        .filter_map(|t| {
            t.parent
                .as_deref()
                .filter(|p| thimacs.contains(p))
                .map(|p| (t.id.as_str(), p))
        })
        .collect();
    for t in &model.thimacs {
        let mut cursor = t.id.as_str();
        for _ in 0..model.thimacs.len() {
            match parent_of.get(cursor) {
                Some(next) if *next == t.id => {
                    push(
                        &mut s0,
                        Rule::S0,
                        &[&t.id],
                        format!("thimac `{}` is caught in a nesting cycle", t.id),
                    );
                    break;
                }
                Some(next) => cursor = next,
                None => break,
            }
        }
    }
    for s in &model.stores {
        if !thimacs.contains(s.owner.as_str()) {
            push(
                &mut s0,
                Rule::S0,
                &[&s.id, &s.owner],
                format!("store `{}` is owned by undeclared thimac `{}`", s.id, s.owner),
            );
        }
    }
    for a in &model.actions {
        if !thimacs.contains(a.owner.as_str()) {
            push(
                &mut s0,
                Rule::S0,
                &[&a.id, &a.owner],
                format!("action `{}` is owned by undeclared thimac `{}`", a.id, a.owner),
            );
        }
        if let Some(store) = &a.store {
            if !stores.contains(store.as_str()) {
                push(
                    &mut s0,
                    Rule::S0,
                    &[&a.id, store],
                    format!("action `{}` is attached to undeclared store `{store}`", a.id),
                );
            }
        }
    }
    for f in &model.flows {
        for end in [&f.src, &f.dst] {
            if !actions.contains_key(end.as_str()) {
                push(
                    &mut s0,
                    Rule::S0,
                    &[&f.src, &f.dst, end],
                    format!("flow names undeclared action `{end}`"),
                );
            }
        }
    }
    for t in &model.triggers {
        for end in [&t.src, &t.dst] {
            if !actions.contains_key(end.as_str()) {
                push(
                    &mut s0,
                    Rule::S0,
                    &[&t.src, &t.dst, end],
                    format!("trigger names undeclared action `{end}`"),
                );
            }
        }
    }

    let mut s1 = Vec::new();
    let mut s2 = Vec::new();
    let mut s3 = Vec::new();
    for f in &model.flows {
        let (Some(src), Some(dst)) = (
            actions.get(f.src.as_str()),
            actions.get(f.dst.as_str()),
        ) else {
            continue;
        };
        if dst.kind == ActionKind::Create {
            push(
                &mut s2,
                Rule::S2,
                &[&f.src, &f.dst],
                format!(
                    "flow into create node `{}`: created things manifest, they do not arrive",
                    f.dst
                ),
            );
            continue;
        }
        if !successor_allowed(src.kind, dst.kind) {
            push(
                &mut s1,
                Rule::S1,
                &[&f.src, &f.dst],
                format!("{} may not be followed by {}", src.kind, dst.kind),
            );
        } else if src.kind == ActionKind::Transfer
            && dst.kind == ActionKind::Transfer
            && src.owner == dst.owner
        {
            push(
                &mut s3,
                Rule::S3,
                &[&f.src, &f.dst],
                format!(
                    "transfer `{}` feeds transfer `{}` inside thimac `{}`; transfer chains are for crossing boundaries",
                    f.src, f.dst, src.owner
                ),
            );
        }
    }

    let mut touched: HashSet<&str> = HashSet::new();
    for f in &model.flows {
        touched.insert(f.src.as_str());
        touched.insert(f.dst.as_str());
    }
    for t in &model.triggers {
        touched.insert(t.src.as_str());
        touched.insert(t.dst.as_str());
    }
    let mut s4 = Vec::new();
    for a in &model.actions {
        if !touched.contains(a.id.as_str()) {
            push(
                &mut s4,
                Rule::S4,
                &[&a.id],
                format!("action `{}` has no incident flow or trigger edges", a.id),
            );
        }
    }

    let mut s5 = Vec::new();
    for t in &model.triggers {
        if let Some(guard) = &t.guard {
            if !stores.contains(guard.store.as_str()) {
                push(
                    &mut s5,
                    Rule::S5,
                    &[&t.src, &t.dst, &guard.store],
                    format!("guard reads undeclared store `{}`", guard.store),
                );
            }
        }
    }

    let mut out = s0;
    out.extend(s1);
    out.extend(s2);
    out.extend(s3);
    out.extend(s4);
    out.extend(s5);
    out
}

/// Dynamic level: regions must be sub-diagrams of the static level, windows
/// must be ordered, cancellations must point at other declared events.
pub fn validate_dynamic(model: &Model) -> Vec<Diagnostic> {
    let actions: HashSet<&str> = model.actions.iter().map(|a| a.id.as_str()).collect();
    let events: HashSet<&str> = model.events.iter().map(|e| e.id.as_str()).collect();

    let mut d1 = Vec::new();
    let mut d2 = Vec::new();
    let mut d4 = Vec::new();
    let mut d5 = Vec::new();
    let mut covered: HashSet<&str> = HashSet::new();
    for e in &model.events {
        for member in &e.region {
            if actions.contains(member.as_str()) {
                covered.insert(member.as_str());
            } else {
                push(
                    &mut d1,
                    Rule::D1,
                    &[&e.id, member],
                    format!("region of `{}` names undeclared action `{member}`", e.id),
                );
            }
        }
        if e.region.is_empty() {
            push(
                &mut d2,
                Rule::D2,
                &[&e.id],
                format!("event `{}` has an empty region", e.id),
            );
        }
        if let Some((start, end)) = e.window {
            if start > end {
                push(
                    &mut d4,
                    Rule::D4,
                    &[&e.id],
                    format!("window {start}..{end} of `{}` ends before it starts", e.id),
                );
            }
        }
        if let Some(CancelSpec::Events(targets)) = &e.cancels {
            for target in targets {
                if target == &e.id {
                    push(
                        &mut d5,
                        Rule::D5,
                        &[&e.id, target],
                        format!("event `{}` cancels itself", e.id),
                    );
                } else if !events.contains(target.as_str()) {
                    push(
                        &mut d5,
                        Rule::D5,
                        &[&e.id, target],
                        format!("event `{}` cancels undeclared event `{target}`", e.id),
                    );
                }
            }
        }
    }

    let mut d3 = Vec::new();
    for a in &model.actions {
        if !covered.contains(a.id.as_str()) {
            push(
                &mut d3,
                Rule::D3,
                &[&a.id],
                format!("action `{}` is covered by no event region", a.id),
            );
        }
    }

    let mut out = d1;
    out.extend(d2);
    out.extend(d3);
    out.extend(d4);
    out.extend(d5);
    out
}

/// Behavior level: every succession edge must be witnessed by the static
/// level, and the graph should be explorable from its entry points.
pub fn validate_behavior(model: &Model) -> Vec<Diagnostic> {
    let actions: HashSet<&str> = model.actions.iter().map(|a| a.id.as_str()).collect();
    let regions: HashMap<&str, HashSet<&str>> = model
        .events
        .iter()
        .map(|e| {
            let members: HashSet<&str> = e
                .region
                .iter()
                .map(String::as_str)
                .filter(|m| actions.contains(m))
                .collect();
            (e.id.as_str(), members)
        })
        .collect();

    let mut b3 = Vec::new();
    let mut resolved_edges: Vec<(&str, &str)> = Vec::new();
    for edge in &model.behavior {
        let missing: Vec<&str> = [&edge.from, &edge.to]
            .into_iter()
            .filter(|id| !regions.contains_key(id.as_str()))
            .map(String::as_str)
            .collect();
        if missing.is_empty() {
            resolved_edges.push((&edge.from, &edge.to));
        } else {
            let mut subjects = vec![edge.from.as_str(), edge.to.as_str()];
            subjects.extend(&missing);
            let list = missing.join("`, `");
            push(
                &mut b3,
                Rule::B3,
                &subjects,
                format!("behavior edge names undeclared event `{list}`"),
            );
        }
    }

    let mut b1 = Vec::new();
    for (from, to) in &resolved_edges {
        let from_region = &regions[from];
        let to_region = &regions[to];
        let overlap = from_region.iter().any(|n| to_region.contains(n));
        let connected = model
            .flows
            .iter()
            .map(|f| (f.src.as_str(), f.dst.as_str()))
            .chain(model.triggers.iter().map(|t| (t.src.as_str(), t.dst.as_str())))
            .any(|(u, v)| from_region.contains(u) && to_region.contains(v));
        if !overlap && !connected {
            push(
                &mut b1,
                Rule::B1,
                &[from, to],
                format!(
                    "no flow or trigger leads from the region of `{from}` into the region of `{to}`, and the regions share no node"
                ),
            );
        }
    }

    // Source events open the behavior graph; everything else should be
    // reachable from one of them.
    let mut has_incoming: HashSet<&str> = HashSet::new();
    for (_, to) in &resolved_edges {
        has_incoming.insert(to);
    }
    let mut reached: HashSet<&str> = HashSet::new();
    let mut frontier: Vec<&str> = model
        .events
        .iter()
        .map(|e| e.id.as_str())
        .filter(|id| !has_incoming.contains(id))
        .collect();
    while let Some(id) = frontier.pop() {
        if !reached.insert(id) {
            continue;
        }
        for (from, to) in &resolved_edges {
            if *from == id {
                frontier.push(to);
            }
        }
    }
    let mut b2 = Vec::new();
    for e in &model.events {
        if !reached.contains(e.id.as_str()) {
            push(
                &mut b2,
                Rule::B2,
                &[&e.id],
                format!("event `{}` is unreachable from every source event", e.id),
            );
        }
    }

    let mut out = b1;
    out.extend(b2);
    out.extend(b3);
    out
}
