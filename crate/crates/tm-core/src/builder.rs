//! Incremental construction of models with the namespace and shape checks
//! that must never be violated: unique ids per namespace, identifier charset,
//! quotable label text, no self-loop edges, and a well-formed thimac forest
//! (a parent must exist before a child can name it).
//!
//! Dangling cross-references (a flow naming an undeclared action, a region
//! member that does not exist) are deliberately allowed here so that the
//! validator can report them as diagnostics instead of a constructor panic.

use std::collections::HashSet;

use crate::model::{
    is_identifier, is_quotable_text, ActionKind, ActionNode, BehaviorEdge, CancelSpec, Event,
    FlowEdge, Guard, Model, Store, Thimac, TriggerEdge,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BuildError {
    #[error("invalid identifier `{id}` for {what}")]
    InvalidIdentifier { what: &'static str, id: String },
    #[error("duplicate {namespace} id `{id}`")]
    DuplicateId { namespace: &'static str, id: String },
    #[error("unknown thimac `{id}`")]
    UnknownThimac { id: String },
    #[error("edge endpoints must differ, got `{id}` on both ends")]
    SelfLoop { id: String },
    #[error("{what} may not contain quotes or line breaks: `{text}`")]
    UnquotableText { what: &'static str, text: String },
    #[error("region of event `{event}` lists `{member}` twice")]
    DuplicateRegionMember { event: String, member: String },
    #[error("cancel list of event `{event}` lists `{target}` twice")]
    DuplicateCancelTarget { event: String, target: String },
}

pub struct ModelBuilder {
    model: Model,
    thimac_ids: HashSet<String>,
    action_ids: HashSet<String>,
    store_ids: HashSet<String>,
    event_ids: HashSet<String>,
}

impl ModelBuilder {
    pub fn new(name: &str) -> Result<ModelBuilder, BuildError> {
        check_ident("model name", name)?;
        Ok(ModelBuilder {
            model: Model {
                name: name.to_owned(),
                ..Model::default()
            },
            thimac_ids: HashSet::new(),
            action_ids: HashSet::new(),
            store_ids: HashSet::new(),
            event_ids: HashSet::new(),
        })
    }

    pub fn thimac(
        &mut self,
        id: &str,
        name: Option<&str>,
        parent: Option<&str>,
    ) -> Result<&mut Self, BuildError> {
        check_ident("thimac", id)?;
        if let Some(name) = name {
            check_text("thimac name", name)?;
        }
        if !self.thimac_ids.insert(id.to_owned()) {
            return Err(BuildError::DuplicateId {
                namespace: "thimac",
                id: id.to_owned(),
            });
        }
        if let Some(parent) = parent {
            let parent_thimac = self
                .model
                .thimacs
                .iter_mut()
                .find(|t| t.id == parent)
                .ok_or_else(|| BuildError::UnknownThimac {
                    id: parent.to_owned(),
                })?;
            parent_thimac.children.push(id.to_owned());
        }
        self.model.thimacs.push(Thimac {
            id: id.to_owned(),
            name: name.map(str::to_owned),
            parent: parent.map(str::to_owned),
            children: Vec::new(),
            actions: Vec::new(),
        });
        Ok(self)
    }

    pub fn store(&mut self, id: &str, owner: &str) -> Result<&mut Self, BuildError> {
        check_ident("store", id)?;
        if !self.thimac_ids.contains(owner) {
            return Err(BuildError::UnknownThimac {
                id: owner.to_owned(),
            });
        }
        if !self.store_ids.insert(id.to_owned()) {
            return Err(BuildError::DuplicateId {
                namespace: "store",
                id: id.to_owned(),
            });
        }
        self.model.stores.push(Store {
            id: id.to_owned(),
            owner: owner.to_owned(),
        });
        Ok(self)
    }

    pub fn action(
        &mut self,
        id: &str,
        kind: ActionKind,
        owner: &str,
        store: Option<&str>,
        label: Option<&str>,
    ) -> Result<&mut Self, BuildError> {
        check_ident("action", id)?;
        if let Some(label) = label {
            check_text("action label", label)?;
        }
        let owner_thimac = self
            .model
            .thimacs
            .iter_mut()
            .find(|t| t.id == owner)
            .ok_or_else(|| BuildError::UnknownThimac {
                id: owner.to_owned(),
            })?;
        if !self.action_ids.insert(id.to_owned()) {
            return Err(BuildError::DuplicateId {
                namespace: "action",
                id: id.to_owned(),
            });
        }
        owner_thimac.actions.push(id.to_owned());
        self.model.actions.push(ActionNode {
            id: id.to_owned(),
            kind,
            owner: owner.to_owned(),
            store: store.map(str::to_owned),
            label: label.map(str::to_owned),
        });
        Ok(self)
    }

    pub fn flow(&mut self, src: &str, dst: &str) -> Result<&mut Self, BuildError> {
        check_endpoints(src, dst)?;
        self.model.flows.push(FlowEdge {
            src: src.to_owned(),
            dst: dst.to_owned(),
        });
        Ok(self)
    }

    pub fn trigger(
        &mut self,
        src: &str,
        dst: &str,
        guard: Option<Guard>,
    ) -> Result<&mut Self, BuildError> {
        check_endpoints(src, dst)?;
        if let Some(guard) = &guard {
            check_ident("guard store", &guard.store)?;
            check_text("guard value", &guard.value)?;
        }
        self.model.triggers.push(TriggerEdge {
            src: src.to_owned(),
            dst: dst.to_owned(),
            guard,
        });
        Ok(self)
    }

    pub fn event(
        &mut self,
        id: &str,
        name: &str,
        region: &[&str],
        window: Option<(u64, u64)>,
        cancels: Option<CancelSpec>,
    ) -> Result<&mut Self, BuildError> {
        check_ident("event", id)?;
        check_text("event name", name)?;
        if !self.event_ids.insert(id.to_owned()) {
            return Err(BuildError::DuplicateId {
                namespace: "event",
                id: id.to_owned(),
            });
        }
        let mut seen = HashSet::new();
        for member in region {
            if !seen.insert(*member) {
                return Err(BuildError::DuplicateRegionMember {
                    event: id.to_owned(),
                    member: (*member).to_owned(),
                });
            }
        }
        if let Some(CancelSpec::Events(targets)) = &cancels {
            let mut seen = HashSet::new();
            for target in targets {
                if !seen.insert(target.as_str()) {
                    return Err(BuildError::DuplicateCancelTarget {
                        event: id.to_owned(),
                        target: target.clone(),
                    });
                }
            }
        }
        self.model.events.push(Event {
            id: id.to_owned(),
            name: name.to_owned(),
            region: region.iter().map(|m| (*m).to_owned()).collect(),
            window,
            cancels,
        });
        Ok(self)
    }

    pub fn behavior(&mut self, from: &str, to: &str) -> Result<&mut Self, BuildError> {
        check_endpoints(from, to)?;
        self.model.behavior.push(BehaviorEdge {
            from: from.to_owned(),
            to: to.to_owned(),
        });
        Ok(self)
    }

    pub fn build(self) -> Model {
        self.model
    }
}

fn check_ident(what: &'static str, id: &str) -> Result<(), BuildError> {
    if is_identifier(id) {
        Ok(())
    } else {
        Err(BuildError::InvalidIdentifier {
            what,
            id: id.to_owned(),
        })
    }
}

fn check_text(what: &'static str, text: &str) -> Result<(), BuildError> {
    if is_quotable_text(text) {
        Ok(())
    } else {
        Err(BuildError::UnquotableText {
            what,
            text: text.to_owned(),
        })
    }
}

fn check_endpoints(src: &str, dst: &str) -> Result<(), BuildError> {
    check_ident("edge endpoint", src)?;
    check_ident("edge endpoint", dst)?;
    if src == dst {
        return Err(BuildError::SelfLoop {
            id: src.to_owned(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_nested_thimacs() {
        let mut b = ModelBuilder::new("m").unwrap();
        b.thimac("outer", Some("Outer"), None).unwrap();
        b.thimac("inner", None, Some("outer")).unwrap();
        b.action("a", ActionKind::Create, "inner", None, None).unwrap();
        let m = b.build();
        assert_eq!(m.thimac("outer").unwrap().children, vec!["inner"]);
        assert_eq!(m.thimac("inner").unwrap().parent.as_deref(), Some("outer"));
        assert_eq!(m.action("a").unwrap().owner, "inner");
    }

    #[test]
    fn rejects_duplicate_ids_per_namespace() {
        let mut b = ModelBuilder::new("m").unwrap();
        b.thimac("t", None, None).unwrap();
        assert!(matches!(
            b.thimac("t", None, None),
            Err(BuildError::DuplicateId { namespace: "thimac", .. })
        ));
        // Same id in a different namespace is fine.
        b.store("t", "t").unwrap();
        b.action("t", ActionKind::Process, "t", None, None).unwrap();
    }

    #[test]
    fn rejects_self_loops() {
        let mut b = ModelBuilder::new("m").unwrap();
        assert!(matches!(b.flow("x", "x"), Err(BuildError::SelfLoop { .. })));
        assert!(matches!(
            b.behavior("E1", "E1"),
            Err(BuildError::SelfLoop { .. })
        ));
    }

    #[test]
    fn parent_must_be_declared_first() {
        let mut b = ModelBuilder::new("m").unwrap();
        assert!(matches!(
            b.thimac("child", None, Some("ghost")),
            Err(BuildError::UnknownThimac { .. })
        ));
    }

    #[test]
    fn allows_dangling_cross_references() {
        // Resolution problems are diagnostics, not construction failures.
        let mut b = ModelBuilder::new("m").unwrap();
        b.flow("nowhere", "elsewhere").unwrap();
        b.event("E1", "e", &["ghost"], None, None).unwrap();
        let m = b.build();
        assert_eq!(m.flows.len(), 1);
        assert_eq!(m.events[0].region, vec!["ghost"]);
    }

    #[test]
    fn rejects_unquotable_label() {
        let mut b = ModelBuilder::new("m").unwrap();
        b.thimac("t", None, None).unwrap();
        assert!(b
            .action("a", ActionKind::Create, "t", None, Some("bad\"quote"))
            .is_err());
    }
}
