mod common;

use common::*;
use proptest::prelude::*;
use zerosum::subgroup::{all_subgroups, image_subgroup, is_periodic_under, quotient, stabilizer, torsion_subgroup};
use zerosum::{Element, ElementSet, Group, GroupSequence, Subgroup};

fn group_strategy() -> impl Strategy<Value = Group> {
    prop::collection::vec(1i64..=6, 1..=3).prop_map(|f| Group::new(&f).unwrap()).prop_filter("small", |g| g.order() <= 64)
}

fn group_and_set() -> impl Strategy<Value = (Group, ElementSet)> {
    group_strategy().prop_flat_map(|g| {
        let n = g.order();
        (Just(g), prop::collection::btree_set(0..n, 1..=n.min(12))).prop_map(|(g, s)| {
            let n = g.order();
            (g, ElementSet::from_elements(n, s.into_iter().map(Element::from_rank)))
        })
    })
}

proptest! {
    #[test]
    fn addition_matches_coordinates(g in group_strategy(), a in 0usize..64, b in 0usize..64, k in -20i64..20) {
        let (a, b) = (Element::from_rank(a % g.order()), Element::from_rank(b % g.order()));
        let (ca, cb) = (coords(&g, a), coords(&g, b));
        prop_assert_eq!(coords(&g, g.add(a, b)), coord_add(&g, &ca, &cb));
        prop_assert_eq!(coords(&g, g.scale(k, a)), coord_scale(&g, k, &ca));
        prop_assert_eq!(g.add(a, g.neg(a)), g.zero());
    }

    #[test]
    fn stabilizer_is_the_largest_period((g, set) in group_and_set()) {
        let h = stabilizer(&g, &set).unwrap();
        prop_assert!(is_periodic_under(&set, &h));
        for x in h.elements().iter() {
            prop_assert_eq!(set.translate(&g, x), set.clone());
        }
        for x in g.elements() {
            if set.translate(&g, x) == set {
                prop_assert!(h.contains(x));
            }
        }
    }

    #[test]
    fn torsion_and_image_orders_multiply((g, d) in group_strategy().prop_flat_map(|g| { let e = g.exponent(); (Just(g), 0u64..=2 * e) })) {
        let t = torsion_subgroup(&g, d);
        let i = image_subgroup(&g, d);
        prop_assert_eq!(t.order() * i.order(), g.order());
        for x in g.elements() {
            prop_assert_eq!(t.contains(x), g.scale(d as i64, x) == g.zero());
        }
    }

    #[test]
    fn sequence_maps_preserve_shape(g in group_strategy(), ranks in prop::collection::vec(0usize..64, 0..10), t in 0usize..64, w in -5i64..5) {
        let s = GroupSequence::from_terms(&g, ranks.iter().map(|r| Element::from_rank(r % g.order())));
        let t = Element::from_rank(t % g.order());
        let moved = s.translate(t);
        prop_assert_eq!(moved.len(), s.len());
        prop_assert_eq!(moved.max_multiplicity(), s.max_multiplicity());
        prop_assert_eq!(s.scale(w).len(), s.len());
        let h = torsion_subgroup(&g, 2);
        let phi = quotient(&g, &h).unwrap();
        prop_assert_eq!(s.map(&phi).unwrap().len(), s.len());
        let round = GroupSequence::from_canonical_string(&g, &s.canonical_string()).unwrap();
        prop_assert_eq!(round, s);
    }
}

#[test]
fn normalisation_examples() {
    let g = Group::new(&[4, 2]).unwrap();
    assert_eq!(g.factors(), &[2, 4]);
    assert_eq!((g.order(), g.exponent(), g.d_star()), (8, 4, 4));
    assert!(Group::new(&[1]).unwrap().is_trivial());
    assert_eq!(Group::new(&[2, 3]).unwrap(), Group::cyclic(6));
    assert!(Group::new(&[0]).is_err());
    assert!(Group::new(&[-2]).is_err());
    let v = group("C2xC4");
    let a = v.element(&[1, 3]).unwrap();
    let b = v.element(&[1, 2]).unwrap();
    assert_eq!(v.coords(v.add(a, b)), vec![0, 1]);
    for g in groups_up_to(9) {
        if !g.is_trivial() {
            assert!(g.d_star() < g.order() as u64);
        }
    }
}

#[test]
fn subgroup_lists_are_closed_and_complete() {
    for (spec, count) in [("C2xC2", 5), ("C4", 3), ("C7", 2), ("C2xC4", 8), ("C3xC3", 6), ("C2xC2xC2", 16), ("C12", 6)] {
        let g = group(spec);
        let subs = all_subgroups(&g).unwrap();
        assert_eq!(subs.len(), count, "{spec}");
        for h in &subs {
            assert_eq!(g.order() % h.order(), 0);
            for a in h.elements().iter() {
                for b in h.elements().iter() {
                    assert!(h.contains(g.add(a, b)));
                }
            }
        }
        for w in subs.windows(2) {
            assert!(w[0].order() <= w[1].order());
        }
    }
    assert!(all_subgroups(&group("C5xC5xC5")).is_err());
}

#[test]
fn quotients_are_homomorphisms() {
    for spec in ["C12", "C2xC6", "C4xC4", "C2xC2xC4", "C3xC9", "C8xC8", "C2xC2xC2xC2"] {
        let g = group(spec);
        for h in all_subgroups(&g).unwrap() {
            let phi = quotient(&g, &h).unwrap();
            assert_eq!(phi.target().order() * h.order(), g.order());
            for a in g.elements() {
                assert_eq!(phi.apply(a) == phi.target().zero(), h.contains(a));
                for b in g.elements() {
                    assert_eq!(phi.apply(g.add(a, b)), phi.target().add(phi.apply(a), phi.apply(b)));
                }
            }
        }
    }
    let c4 = group("C4");
    let phi = quotient(&c4, &Subgroup::whole(&c4)).unwrap();
    assert!(phi.target().is_trivial());
    let id = quotient(&c4, &Subgroup::zero(&c4)).unwrap();
    assert_eq!(id.target(), &c4);
}
