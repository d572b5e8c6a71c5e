//! Parse/serialize round-trip properties over generated models.
//!
//! Models are derived from a raw entropy buffer rather than composed
//! strategies: a cursor walks the bytes and spends them on structural
//! choices. Shrinking then happens on the buffer, which keeps the generator
//! honest about covering dangling references, empty regions, unicode text,
//! and inverted windows — all of which must survive a round trip even though
//! the validator would complain about some of them.

use proptest::prelude::*;
use tm_core::{structural_eq, ActionKind, CancelSpec, Guard, GuardOp, Model, ModelBuilder};
use tm_dsl::{parse, serialize};

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
        debug_assert!(bound > 0);
        self.next() as usize % bound
    }

    fn chance(&mut self, num: u8, den: u8) -> bool {
        self.next() % den < num
    }
}

const DISPLAY_NAMES: [&str; 5] = ["Gate", "Control Unit", "λ-stage", "", "door #2"];
const LABELS: [&str; 4] = ["coin", "push ok", "véhicule", ""];
const VALUES: [&str; 4] = ["", "open", "p1 r1", "zéro"];
const EVENT_NAMES: [&str; 3] = ["arrival", "checked twice", "done ✓"];

fn model_from_bytes(bytes: &[u8]) -> Model {
    let mut c = Cursor { bytes, pos: 0 };
    let mut b = ModelBuilder::new("generated").unwrap();

    let nt = 1 + c.pick(3);
    let thimac_ids: Vec<String> = (0..nt).map(|i| format!("t{i}")).collect();
    for (i, id) in thimac_ids.iter().enumerate() {
        let name = if c.chance(1, 2) {
            Some(DISPLAY_NAMES[c.pick(DISPLAY_NAMES.len())])
        } else {
            None
        };
        let parent = if i > 0 && c.chance(1, 2) {
            Some(thimac_ids[c.pick(i)].clone())
        } else {
            None
        };
        b.thimac(id, name, parent.as_deref()).unwrap();
    }

    let ns = c.pick(3);
    let store_ids: Vec<String> = (0..ns).map(|i| format!("s{i}")).collect();
    for id in &store_ids {
        b.store(id, &thimac_ids[c.pick(nt)]).unwrap();
    }

    let na = 1 + c.pick(8);
    let action_ids: Vec<String> = (0..na).map(|i| format!("a{i}")).collect();
    for id in &action_ids {
        let kind = ActionKind::ALL[c.pick(5)];
        let owner = &thimac_ids[c.pick(nt)];
        let store = match c.pick(4) {
            0 if !store_ids.is_empty() => Some(store_ids[c.pick(ns)].clone()),
            1 => Some("s_phantom".to_owned()), // declared nowhere on purpose
            _ => None,
        };
        let label = if c.chance(1, 2) {
            Some(LABELS[c.pick(LABELS.len())])
        } else {
            None
        };
        b.action(id, kind, owner, store.as_deref(), label).unwrap();
    }

    let endpoint = |c: &mut Cursor| -> String {
        if c.chance(1, 8) {
            "elsewhere".to_owned() // dangling endpoints must round-trip too
        } else {
            format!("a{}", c.pick(na))
        }
    };
    for _ in 0..c.pick(9) {
        let src = endpoint(&mut c);
        let dst = endpoint(&mut c);
        if src != dst {
            b.flow(&src, &dst).unwrap();
        }
    }
    for _ in 0..c.pick(6) {
        let src = endpoint(&mut c);
        let dst = endpoint(&mut c);
        if src == dst {
            continue;
        }
        let guard = if c.chance(2, 3) {
            let store = if !store_ids.is_empty() && c.chance(3, 4) {
                store_ids[c.pick(ns)].clone()
            } else {
                "phantom".to_owned()
            };
            Some(Guard {
                store,
                op: if c.chance(1, 2) {
                    GuardOp::Equals
                } else {
                    GuardOp::NotEquals
                },
                value: VALUES[c.pick(VALUES.len())].to_owned(),
            })
        } else {
            None
        };
        b.trigger(&src, &dst, guard).unwrap();
    }

    let ne = c.pick(4);
    let event_ids: Vec<String> = (0..ne).map(|i| format!("E{i}")).collect();
    for id in &event_ids {
        let mut region: Vec<&str> = Vec::new();
        for aid in &action_ids {
            if c.chance(1, 3) {
                region.push(aid);
            }
        }
        if c.chance(1, 8) {
            region.push("ghost");
        }
        let window = if c.chance(1, 3) {
            let start = u64::from(c.next() % 7);
            let span = i64::from(c.next() % 9) - 2; // sometimes inverted
            Some((start, start.saturating_add_signed(span)))
        } else {
            None
        };
        let cancels = match c.pick(5) {
            0 => Some(CancelSpec::All),
            1 => {
                let mut targets: Vec<String> = Vec::new();
                for i in 0..4u32 {
                    if c.chance(1, 3) {
                        targets.push(format!("E{i}")); // may dangle, may be self
                    }
                }
                if targets.is_empty() {
                    None
                } else {
                    Some(CancelSpec::Events(targets))
                }
            }
            _ => None,
        };
        let name = EVENT_NAMES[c.pick(EVENT_NAMES.len())];
        b.event(id, name, &region, window, cancels).unwrap();
    }

    if ne >= 2 {
        for _ in 0..c.pick(5) {
            let from = &event_ids[c.pick(ne)];
            let to = &event_ids[c.pick(ne)];
            if from != to {
                b.behavior(from, to).unwrap();
            }
        }
    }

    b.build()
}

/// Same membership, every declaration list reversed.
fn reversed_twin(m: &Model) -> Model {
    let mut twin = m.clone();
    twin.thimacs.reverse();
    twin.actions.reverse();
    twin.stores.reverse();
    twin.flows.reverse();
    twin.triggers.reverse();
    for e in &mut twin.events {
        e.region.reverse();
        if let Some(CancelSpec::Events(t)) = &mut e.cancels {
            t.reverse();
        }
    }
    twin.events.reverse();
    twin.behavior.reverse();
    twin
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn parse_inverts_serialize(bytes in proptest::collection::vec(any::<u8>(), 48..160)) {
        let m = model_from_bytes(&bytes);
        let text = serialize(&m).unwrap();
        let back = parse(&text).unwrap_or_else(|errs| {
            panic!("serialized text failed to parse: {errs:?}\n---\n{text}")
        });
        prop_assert!(structural_eq(&m, &back), "round trip changed the model:\n{text}");
    }

    #[test]
    fn serialize_is_a_fixed_point(bytes in proptest::collection::vec(any::<u8>(), 48..160)) {
        let m = model_from_bytes(&bytes);
        let once = serialize(&m).unwrap();
        let again = serialize(&parse(&once).unwrap()).unwrap();
        prop_assert_eq!(once, again);
    }

    #[test]
    fn declaration_order_never_reaches_the_text(bytes in proptest::collection::vec(any::<u8>(), 48..160)) {
        let m = model_from_bytes(&bytes);
        let twin = reversed_twin(&m);
        prop_assert!(structural_eq(&m, &twin));
        prop_assert_eq!(serialize(&m).unwrap(), serialize(&twin).unwrap());
    }
}
