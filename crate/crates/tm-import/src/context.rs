//! Context-diagram importer. A context diagram names one system under
//! development, the external entities around it, and the labeled data flows
//! between them. Each flow becomes an explicit hand-off: the sender releases
//! and transfers, the receiver transfers and receives, and the two transfer
//! nodes meet at the boundary. Context models carry no events or behavior
//! edges — they describe interfaces, not runs.

use thiserror::Error;

use tm_core::{is_quotable_text, ActionKind, Model, ModelBuilder};

/// A parsed context diagram: the system, its neighbors, and the labeled
/// flows between them. Exactly one endpoint of every flow must be the
/// system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContextSpec {
    pub system: String,
    pub entities: Vec<String>,
    /// `(from, to, label)`; the label may be empty.
    pub flows: Vec<(String, String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CtxError {
    #[error("name `{original}` has no usable identifier characters")]
    EmptyName { original: String },
    #[error("name `{name}` is declared more than once")]
    DuplicateName { name: String },
    #[error("names `{a}` and `{b}` both reduce to identifier `{ident}`")]
    NameCollision { a: String, b: String, ident: String },
    #[error("flow endpoint `{name}` is neither the system nor a declared entity")]
    UnknownEndpoint { name: String },
    #[error("flow from `{from}` to `{to}` bypasses the system; context flows connect entities to the system")]
    EntityToEntityFlow { from: String, to: String },
    #[error("flow connects the system to itself")]
    SelfFlow,
    #[error("flow label `{label}` cannot be quoted")]
    BadLabel { label: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct CtxParseError {
    pub line: usize,
    pub message: String,
}

fn parse_fail(line: usize, message: impl Into<String>) -> CtxParseError {
    CtxParseError {
        line,
        message: message.into(),
    }
}

/// Parse the `.ctx` line format:
///
/// ```text
/// # comment
/// system: EarlyWarning
/// entity: sensors
/// flow: sensors -> EarlyWarning raw readings
/// ```
///
/// Names are single words; everything after a flow's second endpoint is the
/// label, whitespace-normalized. `#` starts a comment anywhere on a line.
pub fn parse_context(text: &str) -> Result<ContextSpec, CtxParseError> {
    let mut system: Option<String> = None;
    let mut entities = Vec::new();
    let mut flows = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, rest)) = line.split_once(':') else {
            return Err(parse_fail(line_no, format!("expected `key: value`, found `{line}`")));
        };
        let rest = rest.trim();
        match key.trim() {
            "system" => {
                let name = single_word(rest, line_no, "system")?;
                if system.replace(name).is_some() {
                    return Err(parse_fail(line_no, "the system is already named"));
                }
            }
            "entity" => entities.push(single_word(rest, line_no, "entity")?),
            "flow" => {
                let mut words = rest.split_whitespace();
                let (Some(from), Some(arrow), Some(to)) =
                    (words.next(), words.next(), words.next())
                else {
                    return Err(parse_fail(line_no, "expected `flow: FROM -> TO label`"));
                };
                if arrow != "->" {
                    return Err(parse_fail(
                        line_no,
                        format!("expected `->` between endpoints, found `{arrow}`"),
                    ));
                }
                let label = words.collect::<Vec<_>>().join(" ");
                flows.push((from.to_owned(), to.to_owned(), label));
            }
            other => {
                return Err(parse_fail(line_no, format!("unknown key `{other}`")));
            }
        }
    }

    let Some(system) = system else {
        return Err(parse_fail(text.lines().count() + 1, "no `system:` line"));
    };
    Ok(ContextSpec {
        system,
        entities,
        flows,
    })
}

fn single_word(rest: &str, line_no: usize, what: &str) -> Result<String, CtxParseError> {
    let mut words = rest.split_whitespace();
    match (words.next(), words.next()) {
        (Some(w), None) => Ok(w.to_owned()),
        (None, _) => Err(parse_fail(line_no, format!("{what} name missing"))),
        (Some(_), Some(_)) => Err(parse_fail(
            line_no,
            format!("{what} name must be a single word"),
        )),
    }
}

/// Reduce a diagram name to a model identifier: ASCII letters lowercased,
/// digits kept, every other run of characters collapsed to one `_`. Returns
/// `None` when nothing identifier-like survives.
pub fn sanitize_ident(name: &str) -> Option<String> {
    let mut out = String::new();
    let mut pending_gap = false;
    for c in name.chars() {
        if c.is_ascii_alphanumeric() {
            if pending_gap && !out.is_empty() {
                out.push('_');
            }
            out.push(c.to_ascii_lowercase());
            pending_gap = false;
        } else {
            pending_gap = true;
        }
    }
    if out.is_empty() {
        return None;
    }
    if out.as_bytes()[0].is_ascii_digit() {
        out.insert(0, '_');
    }
    Some(out)
}

/// Build the thimac model for a context diagram: one thimac for the system,
/// one per entity, and per flow a Release→Transfer chain in the sender and a
/// Transfer→Receive chain in the receiver, joined by a boundary
/// Transfer→Transfer edge. All four nodes carry the flow's label.
pub fn import_context(spec: &ContextSpec) -> Result<Model, CtxError> {
    // Verbatim duplicates first, identifier collisions second, so the
    // report distinguishes "said twice" from "too similar".
    let mut participants: Vec<&str> = vec![spec.system.as_str()];
    for entity in &spec.entities {
        if participants.contains(&entity.as_str()) {
            return Err(CtxError::DuplicateName {
                name: entity.clone(),
            });
        }
        participants.push(entity);
    }

    let mut idents: Vec<(String, &str)> = Vec::new();
    for name in &participants {
        let ident = sanitize_ident(name).ok_or_else(|| CtxError::EmptyName {
            original: (*name).to_owned(),
        })?;
        if let Some((_, prior)) = idents.iter().find(|(i, _)| *i == ident) {
            return Err(CtxError::NameCollision {
                a: (*prior).to_owned(),
                b: (*name).to_owned(),
                ident,
            });
        }
        idents.push((ident, name));
    }
    let ident_of = |name: &str| -> &str {
        // Every participant was pushed above; unreachable for resolved names.
        &idents.iter().find(|(_, n)| *n == name).unwrap().0
    };

    let mut b = ModelBuilder::new(ident_of(&spec.system))
        .expect("sanitized identifiers are valid model names");
    for name in &participants {
        let ident = ident_of(name);
        let display = (*name != ident).then_some(*name);
        b.thimac(ident, display, None)
            .expect("participant identifiers are unique and parentless");
    }

    for (i, (from, to, label)) in spec.flows.iter().enumerate() {
        for end in [from, to] {
            if !participants.contains(&end.as_str()) {
                return Err(CtxError::UnknownEndpoint { name: end.clone() });
            }
        }
        let from_system = from == &spec.system;
        let to_system = to == &spec.system;
        match (from_system, to_system) {
            (true, true) => return Err(CtxError::SelfFlow),
            (false, false) => {
                return Err(CtxError::EntityToEntityFlow {
                    from: from.clone(),
                    to: to.clone(),
                })
            }
            _ => {}
        }
        if !is_quotable_text(label) {
            return Err(CtxError::BadLabel {
                label: label.clone(),
            });
        }

        let src = ident_of(from).to_owned();
        let dst = ident_of(to).to_owned();
        let text = (!label.is_empty()).then_some(label.as_str());
        let node = |suffix: &str| format!("f{i}_{suffix}");
        // Generated ids cannot collide: the numeric prefix is unique per
        // flow and action ids live in their own namespace.
        b.action(&node("release"), ActionKind::Release, &src, None, text)
            .expect("generated release node");
        b.action(&node("transfer_out"), ActionKind::Transfer, &src, None, text)
            .expect("generated transfer node");
        b.action(&node("transfer_in"), ActionKind::Transfer, &dst, None, text)
            .expect("generated transfer node");
        b.action(&node("receive"), ActionKind::Receive, &dst, None, text)
            .expect("generated receive node");
        b.flow(&node("release"), &node("transfer_out"))
            .expect("chain endpoints are distinct");
        b.flow(&node("transfer_out"), &node("transfer_in"))
            .expect("boundary endpoints are distinct");
        b.flow(&node("transfer_in"), &node("receive"))
            .expect("chain endpoints are distinct");
    }

    Ok(b.build())
}
