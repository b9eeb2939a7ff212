mod common;

use common::{any_expr, prime};
use lcacalc_core::expr::{direct_sum, factorize, iso_equal, normalize, Atom, GroupExpr, RawAtom};
use lcacalc_core::parse::parse_expr;
use proptest::prelude::*;

fn raw_atom() -> impl Strategy<Value = RawAtom> {
    prop_oneof![
        common::any_atom().prop_map(RawAtom::Atom),
        (1u64..=500).prop_map(RawAtom::CyclicOfOrder),
    ]
}

proptest! {
    #[test]
    fn normalize_is_idempotent(raw in prop::collection::vec(raw_atom(), 0..6)) {
        let once = normalize(&raw).unwrap();
        let again: Vec<RawAtom> = once.atoms().iter().copied().map(RawAtom::Atom).collect();
        prop_assert_eq!(normalize(&again).unwrap(), once);
    }

    #[test]
    fn normalize_ignores_input_order(mut raw in prop::collection::vec(raw_atom(), 0..6)) {
        let a = normalize(&raw).unwrap();
        raw.reverse();
        prop_assert_eq!(normalize(&raw).unwrap(), a);
    }

    #[test]
    fn iso_equal_is_an_equivalence(a in any_expr(4), b in any_expr(4), c in any_expr(4)) {
        prop_assert!(iso_equal(&a, &a));
        prop_assert_eq!(iso_equal(&a, &b), iso_equal(&b, &a));
        if iso_equal(&a, &b) && iso_equal(&b, &c) {
            prop_assert!(iso_equal(&a, &c));
        }
    }

    #[test]
    fn direct_sum_is_a_commutative_monoid(a in any_expr(4), b in any_expr(4), c in any_expr(4)) {
        prop_assert!(iso_equal(&direct_sum(&a, &b), &direct_sum(&b, &a)));
        prop_assert!(iso_equal(&direct_sum(&direct_sum(&a, &b), &c), &direct_sum(&a, &direct_sum(&b, &c))));
        prop_assert!(iso_equal(&direct_sum(&a, &GroupExpr::zero()), &a));
        prop_assert_eq!(direct_sum(&a, &b).len(), a.len() + b.len());
    }

    #[test]
    fn cyclic_splits_into_prime_powers(n in 2u64..100_000) {
        let g = GroupExpr::cyclic(n).unwrap();
        let primes = factorize(n);
        prop_assert_eq!(g.len(), primes.len());
        for (p, k) in primes {
            prop_assert!(g.atoms().contains(&Atom::Cyclic(p, k)));
        }
        let product: u64 = g.atoms().iter().map(|a| a.order().unwrap()).product();
        prop_assert_eq!(product, n);
    }

    #[test]
    fn parse_inverts_render(g in any_expr(6)) {
        prop_assert_eq!(parse_expr(&g.ascii()).unwrap(), g);
    }

    #[test]
    fn parse_accepts_composite_cyclic_orders(n in 1u64..10_000, p in prime()) {
        let text = format!("C({n})+Pr({p})");
        let g = parse_expr(&text).unwrap();
        prop_assert_eq!(g, direct_sum(&GroupExpr::cyclic(n).unwrap(), &Atom::Prufer(p).into()));
    }
}

#[test]
fn multiset_semantics() {
    let c2: GroupExpr = Atom::Cyclic(2, 1).into();
    assert_eq!(direct_sum(&c2, &c2).ascii(), "C(2)^2");
    assert!(!iso_equal(&direct_sum(&c2, &c2), &GroupExpr::cyclic(4).unwrap()));
    assert_eq!(direct_sum(&Atom::Real.into(), &Atom::Circle.into()).ascii(), "R+T");
}
