mod common;

use std::sync::OnceLock;

use common::{all_atoms, any_expr, core_expr, expr_of, PRIMES};
use lcacalc_core::classify::{
    classify_injective, classify_projective, cyclic_truncation_exact, decompose, is_essentially_injective, member,
    properties, resolve, BaseCategory, CategoryTag,
};
use lcacalc_core::cover::{CoverExpr, Operand};
use lcacalc_core::expr::{direct_sum, Atom, GroupExpr};
use lcacalc_core::homext::Engine;
use proptest::prelude::*;

fn engine() -> &'static Engine {
    static E: OnceLock<Engine> = OnceLock::new();
    E.get_or_init(Engine::standard)
}

fn heart_tags() -> Vec<CategoryTag> {
    let mut bases = vec![
        BaseCategory::Lcpab,
        BaseCategory::LcpabCg,
        BaseCategory::Flcpab,
        BaseCategory::LieAb,
        BaseCategory::Tdlcpab,
        BaseCategory::TorLcpab,
    ];
    bases.extend(PRIMES.map(BaseCategory::LcpabP));
    bases.into_iter().map(CategoryTag::heart).collect()
}

fn catalog_covers() -> Vec<CoverExpr> {
    let mut out: Vec<CoverExpr> = PRIMES.map(CoverExpr::Xi).to_vec();
    for n in 1..=3 {
        out.push(CoverExpr::DenseFree { ambient: Atom::Circle.into(), kernel_rank: n });
        out.push(CoverExpr::DenseFree { ambient: GroupExpr::atom(Atom::Real).power(n as usize), kernel_rank: n + 1 });
    }
    out
}

fn torsion_finite_rank_atom() -> impl Strategy<Value = Atom> {
    prop_oneof![
        common::prime().prop_map(Atom::PadicInt),
        common::prime().prop_map(Atom::PadicRat),
        common::prime().prop_map(Atom::Prufer),
        (common::prime(), 1u32..=3).prop_map(|(p, k)| Atom::Cyclic(p, k)),
    ]
}

proptest! {
    #[test]
    fn injective_in_lcpab_iff_ext_from_circle_vanishes(g in core_expr(5)) {
        let inj = classify_injective(&g.clone().into(), CategoryTag::base(BaseCategory::Lcpab)).unwrap().holds;
        let ext = engine().ext(&Atom::Circle.into(), &g.clone().into()).value;
        if ext.is_resolved() {
            prop_assert_eq!(inj, ext.is_zero(), "{}", g.ascii());
        } else {
            prop_assert!(!inj, "unresolved Ext(T, {}) but injective", g.ascii());
        }
    }

    #[test]
    fn injective_in_tor_flcpab_iff_divisible(g in expr_of(torsion_finite_rank_atom(), 5)) {
        prop_assume!(member(&g, BaseCategory::TorFlcpab));
        let v = classify_injective(&g.clone().into(), CategoryTag::base(BaseCategory::TorFlcpab)).unwrap();
        prop_assert_eq!(v.holds, properties(&g).divisible);
    }

    #[test]
    fn projectives_agree_across_lcpab_cg_and_lie(g in any_expr(5)) {
        let obj: Operand = g.clone().into();
        let verdicts: Vec<bool> = [BaseCategory::Lcpab, BaseCategory::LcpabCg, BaseCategory::LieAb]
            .into_iter()
            .filter_map(|b| classify_projective(&obj, CategoryTag::base(b)).ok())
            .map(|v| v.holds)
            .collect();
        prop_assert!(verdicts.windows(2).all(|w| w[0] == w[1]), "{}: {:?}", g.ascii(), verdicts);
    }

    #[test]
    fn decomposition_is_disjoint_and_recomposes(g in any_expr(6)) {
        let d = decompose(&g);
        let parts = [&d.s1_part, &d.r_part, &d.t_part, &d.z_part];
        let sum = parts.iter().fold(GroupExpr::zero(), |acc, p| direct_sum(&acc, p));
        prop_assert_eq!(&sum, &g);
        for (i, p) in parts.iter().enumerate() {
            for q in &parts[i + 1..] {
                prop_assert!(p.atoms().iter().all(|a| !q.atoms().contains(a)));
            }
        }
    }

    #[test]
    fn resolutions_land_in_the_injective_class(g in core_expr(5)) {
        prop_assume!(!g.any(|a| matches!(a, Atom::PadicRat(_) | Atom::Solenoid)));
        let r = resolve(&g).unwrap();
        prop_assert!(is_essentially_injective(&r.d0));
        prop_assert!(is_essentially_injective(&r.d1));
        prop_assert_eq!(r.d1_symbolic.len(), g.atoms().iter().filter(|a| matches!(a, Atom::PadicInt(_))).count());
    }
}

#[test]
fn hearts_have_no_nonzero_injectives() {
    let mut objects: Vec<Operand> = all_atoms().into_iter().map(Operand::from).collect();
    objects.push(GroupExpr::from_atoms([Atom::Real, Atom::Circle]).unwrap().into());
    objects.push(GroupExpr::from_atoms([Atom::Rat, Atom::Prufer(2)]).unwrap().into());
    objects.extend(catalog_covers().into_iter().map(Operand::Cover));
    let mut members = 0;
    for h in heart_tags() {
        for x in &objects {
            if let Ok(v) = classify_injective(x, h) {
                members += 1;
                assert!(!v.holds, "{} injective in {h}", x.ascii());
            }
        }
    }
    assert!(members > 50, "only {members} memberships exercised");
    for h in heart_tags() {
        assert!(classify_injective(&GroupExpr::zero().into(), h).unwrap().holds);
    }
}

#[test]
fn cyclic_truncations_are_exact() {
    for p in PRIMES {
        for k in 1..=3 {
            for m in 1..=2 {
                assert!(cyclic_truncation_exact(p, k, m), "p={p} k={k} m={m}");
            }
        }
    }
}
