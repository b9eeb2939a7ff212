use lcacalc_core::finab::{
    build_extension, cocycle_group, crosscheck, ext_finite, Cocycle2, CocycleSolver, FinAb, EXHAUSTIVE_BOUND,
};
use num_integer::Integer;
use proptest::prelude::*;

fn group(max_order: u64) -> impl Strategy<Value = FinAb> {
    prop::collection::vec(2u64..=12, 0..=3)
        .prop_map(FinAb::new)
        .prop_filter("order bound", move |g| g.order() <= max_order)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn zero_cocycle_builds_the_split_extension(g in group(32), a in group(32)) {
        let e = build_extension(&g, &a, &Cocycle2::zero(g.clone(), a.clone())).unwrap();
        prop_assert_eq!(e.invariant_factors(), &a.direct_sum(&g));
    }

    #[test]
    fn basis_cocycles_build_extensions(g in group(16), a in group(16)) {
        let cg = cocycle_group(&g, &a).unwrap();
        for c in &cg.basis {
            let e = build_extension(&g, &a, c).unwrap();
            prop_assert_eq!(e.order(), (g.order() * a.order()) as usize);
        }
    }

    #[test]
    fn solver_agrees_with_formula(g in group(64), a in group(64)) {
        let m = CocycleSolver::new(&g).unwrap().modules(&a).unwrap();
        prop_assert_eq!(&m.quotient, &ext_finite(&g, &a));
        prop_assert_eq!(m.cocycles.order_exponents(), m.coboundaries.direct_sum(&m.quotient).order_exponents());
    }

    #[test]
    fn ext_is_additive_in_each_argument(g in group(16), h in group(16), a in group(16)) {
        prop_assert_eq!(ext_finite(&g.direct_sum(&h), &a), ext_finite(&g, &a).direct_sum(&ext_finite(&h, &a)));
        prop_assert_eq!(ext_finite(&a, &g.direct_sum(&h)), ext_finite(&a, &g).direct_sum(&ext_finite(&a, &h)));
    }
}

#[test]
fn cyclic_ext_is_the_gcd() {
    for n in 1..=16u64 {
        for m in 1..=16u64 {
            let d = n.gcd(&m);
            let expected = if d > 1 { FinAb::cyclic(d) } else { FinAb::trivial() };
            assert_eq!(ext_finite(&FinAb::cyclic(n), &FinAb::cyclic(m)), expected, "n={n} m={m}");
        }
    }
}

#[test]
fn exhaustive_class_counts_match_the_quotient() {
    let mut checked = 0;
    for gf in [vec![], vec![2], vec![3], vec![4], vec![2, 2], vec![2, 4], vec![8], vec![2, 2, 2]] {
        for af in [vec![], vec![2], vec![3], vec![4], vec![2, 2]] {
            let (g, a) = (FinAb::new(gf.clone()), FinAb::new(af.clone()));
            if g.order() * a.order() > EXHAUSTIVE_BOUND {
                continue;
            }
            let r = crosscheck(&g, &a);
            assert!(r.agrees(), "G={g} A={a}: {:?}", r.mismatches);
            let ex = r.exhaustive.expect("within the enumeration bound");
            assert_eq!(ex.classes as u64, ext_finite(&g, &a).order(), "G={g} A={a}");
            checked += 1;
        }
    }
    assert!(checked >= 20, "{checked}");
}

#[test]
fn z2_by_z2_has_two_classes() {
    let r = crosscheck(&FinAb::cyclic(2), &FinAb::cyclic(2));
    let ex = r.exhaustive.unwrap();
    assert_eq!(ex.classes, 2);
    let twisted = Cocycle2::from_fn(FinAb::cyclic(2), FinAb::cyclic(2), |x, y| usize::from(x == 1 && y == 1));
    let e = build_extension(&FinAb::cyclic(2), &FinAb::cyclic(2), &twisted).unwrap();
    assert_eq!(e.invariant_factors(), &FinAb::cyclic(4));
}
