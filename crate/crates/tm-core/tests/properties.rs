//! Property tests over generated models: structural equality behaves as an
//! equivalence relation that ignores declaration order, canonicalization is
//! idempotent, and region extraction is monotone in its node set.

use proptest::prelude::*;
use tm_core::*;

fn arb_model() -> impl Strategy<Value = Model> {
    (
        1usize..=3,
        prop::collection::vec(any::<u8>(), 1..=8),
        prop::collection::vec((any::<u8>(), any::<u8>()), 0..=10),
        prop::collection::vec((any::<u8>(), any::<u8>(), any::<bool>()), 0..=6),
        1usize..=3,
        prop::collection::vec(prop::collection::vec(any::<u8>(), 1..=4), 0..=4),
        prop::collection::vec((any::<u8>(), any::<u8>()), 0..=5),
    )
        .prop_map(|(nt, acts, flows, trigs, ns, regions, behav)| {
            let mut b = ModelBuilder::new("gen").unwrap();
            for i in 0..nt {
                let parent = (i > 1).then_some("t0");
                b.thimac(&format!("t{i}"), None, parent).unwrap();
            }
            for i in 0..ns {
                b.store(&format!("s{i}"), "t0").unwrap();
            }
            let na = acts.len();
            for (i, seed) in acts.iter().enumerate() {
                let seed = *seed as usize;
                let kind = ActionKind::ALL[seed % 5];
                let owner = format!("t{}", (seed / 5) % nt);
                let store = seed.is_multiple_of(3).then(|| format!("s{}", seed % ns));
                let label = seed.is_multiple_of(4).then(|| format!("thing {seed}"));
                b.action(&format!("a{i}"), kind, &owner, store.as_deref(), label.as_deref())
                    .unwrap();
            }
            for (x, y) in flows {
                let (src, dst) = (x as usize % na, y as usize % na);
                if src != dst {
                    b.flow(&format!("a{src}"), &format!("a{dst}")).unwrap();
                }
            }
            for (x, y, guarded) in trigs {
                let (src, dst) = (x as usize % na, y as usize % na);
                if src != dst {
                    let guard = guarded.then(|| Guard {
                        store: format!("s{}", x as usize % ns),
                        op: if y % 2 == 0 { GuardOp::Equals } else { GuardOp::NotEquals },
                        value: format!("v{y}"),
                    });
                    b.trigger(&format!("a{src}"), &format!("a{dst}"), guard).unwrap();
                }
            }
            let ne = regions.len();
            for (i, seeds) in regions.iter().enumerate() {
                let mut members: Vec<String> =
                    seeds.iter().map(|s| format!("a{}", *s as usize % na)).collect();
                members.sort();
                members.dedup();
                let refs: Vec<&str> = members.iter().map(String::as_str).collect();
                let window = (i % 2 == 0).then_some((i as u64, i as u64 + 3));
                b.event(&format!("E{i}"), &format!("event {i}"), &refs, window, None)
                    .unwrap();
            }
            for (x, y) in behav {
                if ne > 1 {
                    let (from, to) = (x as usize % ne, y as usize % ne);
                    if from != to {
                        b.behavior(&format!("E{from}"), &format!("E{to}")).unwrap();
                    }
                }
            }
            b.build()
        })
}

/// A full declaration-order permutation of the model (reversal).
fn reversed(m: &Model) -> Model {
    let mut r = m.clone();
    r.thimacs.reverse();
    r.actions.reverse();
    r.stores.reverse();
    r.flows.reverse();
    r.triggers.reverse();
    r.events.reverse();
    r.behavior.reverse();
    for e in &mut r.events {
        e.region.reverse();
    }
    r
}

proptest! {
    #[test]
    fn structural_eq_is_an_order_blind_equivalence(m in arb_model()) {
        prop_assert!(structural_eq(&m, &m));
        let p = reversed(&m);
        prop_assert!(structural_eq(&m, &p));
        prop_assert!(structural_eq(&p, &m));
        let q = reversed(&p);
        prop_assert!(structural_eq(&p, &q));
        prop_assert!(structural_eq(&m, &q));
    }

    #[test]
    fn canonicalize_is_idempotent(m in arb_model()) {
        let once = canonicalize(&m);
        prop_assert_eq!(canonicalize(&once), once);
    }

    #[test]
    fn kind_change_breaks_structural_eq(m in arb_model()) {
        let mut other = m.clone();
        let kind = other.actions[0].kind;
        other.actions[0].kind = if kind == ActionKind::Create {
            ActionKind::Process
        } else {
            ActionKind::Create
        };
        prop_assert!(!structural_eq(&m, &other));
    }

    #[test]
    fn induced_region_is_monotone(m in arb_model(), k in 1usize..=8) {
        let all: Vec<String> = m.actions.iter().map(|a| a.id.clone()).collect();
        let k = k.min(all.len());
        let subset = all[..k].to_vec();
        let small = induced_region(&m, &subset).unwrap();
        let full = induced_region(&m, &all).unwrap();
        for f in &small.flows {
            prop_assert!(full.flows.contains(f));
            prop_assert!(subset.contains(&f.src) && subset.contains(&f.dst));
        }
        for t in &small.triggers {
            prop_assert!(full.triggers.contains(t));
        }
        prop_assert_eq!(full.nodes.len(), all.len());
    }
}
