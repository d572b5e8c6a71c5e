//! Brute-force cross-checks of the behavior pass over generated models.
//!
//! The justification predicate for a succession edge is re-implemented here
//! as the most literal possible double loop, and the validator's B1 output
//! must agree with it exactly on every generated model.

use std::collections::HashSet;

use proptest::prelude::*;
use tm_core::{ActionKind, Model, ModelBuilder};
use tm_validate::{validate_all, validate_behavior, Rule};

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn next(&mut self) -> u8 {
        let b = self.bytes.get(self.pos).copied().unwrap_or(0);
        self.pos += 1;
        b
    }

    fn pick(&mut self, bound: usize) -> usize {
        self.next() as usize % bound
    }

    fn chance(&mut self, num: u8, den: u8) -> bool {
        self.next() % den < num
    }
}

fn model_from_bytes(bytes: &[u8]) -> Model {
    let mut c = Cursor { bytes, pos: 0 };
    let mut b = ModelBuilder::new("m").unwrap();
    b.thimac("t", None, None).unwrap();

    let na = 2 + c.pick(5);
    let ids: Vec<String> = (0..na).map(|i| format!("a{i}")).collect();
    for id in &ids {
        let kind = ActionKind::ALL[c.pick(5)];
        b.action(id, kind, "t", None, None).unwrap();
    }
    for _ in 0..c.pick(7) {
        let (src, dst) = (c.pick(na), c.pick(na));
        if src != dst {
            b.flow(&ids[src], &ids[dst]).unwrap();
        }
    }
    for _ in 0..c.pick(4) {
        let (src, dst) = (c.pick(na), c.pick(na));
        if src != dst {
            b.trigger(&ids[src], &ids[dst], None).unwrap();
        }
    }

    let ne = 2 + c.pick(3);
    let event_ids: Vec<String> = (0..ne).map(|i| format!("E{i}")).collect();
    for id in &event_ids {
        let mut region: Vec<&str> = Vec::new();
        for aid in &ids {
            if c.chance(1, 3) {
                region.push(aid);
            }
        }
        if c.chance(1, 6) {
            region.push("ghost");
        }
        b.event(id, "e", &region, None, None).unwrap();
    }
    for _ in 0..1 + c.pick(5) {
        let from = if c.chance(1, 8) {
            "E9".to_owned()
        } else {
            event_ids[c.pick(ne)].clone()
        };
        let to = event_ids[c.pick(ne)].clone();
        if from != to {
            b.behavior(&from, &to).unwrap();
        }
    }
    b.build()
}

/// The predicate spelled out as slowly as possible.
fn justified_by_hand(m: &Model, from: &str, to: &str) -> bool {
    let declared: HashSet<&str> = m.actions.iter().map(|a| a.id.as_str()).collect();
    let region = |id: &str| -> Vec<&str> {
        m.event(id)
            .map(|e| {
                e.region
                    .iter()
                    .map(String::as_str)
                    .filter(|n| declared.contains(n))
                    .collect()
            })
            .unwrap_or_default()
    };
    let ra = region(from);
    let rb = region(to);
    for u in &ra {
        for v in &rb {
            if u == v {
                return true;
            }
            let flow_hit = m.flows.iter().any(|f| f.src == *u && f.dst == *v);
            let trig_hit = m.triggers.iter().any(|t| t.src == *u && t.dst == *v);
            if flow_hit || trig_hit {
                return true;
            }
        }
    }
    false
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn b1_matches_brute_force(bytes in proptest::collection::vec(any::<u8>(), 32..96)) {
        let m = model_from_bytes(&bytes);
        let declared: HashSet<&str> = m.events.iter().map(|e| e.id.as_str()).collect();

        let mut expected: Vec<(String, String)> = Vec::new();
        for edge in &m.behavior {
            let resolved = declared.contains(edge.from.as_str()) && declared.contains(edge.to.as_str());
            if resolved && !justified_by_hand(&m, &edge.from, &edge.to) {
                expected.push((edge.from.clone(), edge.to.clone()));
            }
        }

        let flagged: Vec<(String, String)> = validate_behavior(&m)
            .into_iter()
            .filter(|d| d.rule == Rule::B1)
            .map(|d| (d.subjects[0].clone(), d.subjects[1].clone()))
            .collect();

        prop_assert_eq!(flagged, expected);
    }

    #[test]
    fn reports_are_reproducible(bytes in proptest::collection::vec(any::<u8>(), 32..96)) {
        let m = model_from_bytes(&bytes);
        prop_assert_eq!(validate_all(&m), validate_all(&m));
    }
}
