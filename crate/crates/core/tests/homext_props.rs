mod common;

use std::sync::OnceLock;

use common::{all_atoms, core_expr};
use lcacalc_core::cover::{CoverExpr, Operand};
use lcacalc_core::duality::dual_atom;
use lcacalc_core::expr::{direct_sum, Atom, GroupExpr};
use lcacalc_core::finab::{ext_finite, FinAb};
use lcacalc_core::homext::{
    audit_facts, solve_les, Engine, Functor, HomExtValue, SixTermSeq, Slot,
};
use proptest::prelude::*;

fn engine() -> &'static Engine {
    static E: OnceLock<Engine> = OnceLock::new();
    E.get_or_init(Engine::standard)
}

fn expr_value(f: Functor, a: &GroupExpr, b: &GroupExpr) -> Option<GroupExpr> {
    engine().query(f, &a.clone().into(), &b.clone().into()).value.as_expr().cloned()
}

fn functor() -> impl Strategy<Value = Functor> {
    prop_oneof![Just(Functor::Hom), Just(Functor::Ext)]
}

fn finite_group() -> impl Strategy<Value = FinAb> {
    prop::collection::vec(2u64..=16, 0..=3)
        .prop_map(FinAb::new)
        .prop_filter("order at most 64", |g| g.order() <= 64)
}

fn term() -> impl Strategy<Value = Operand> {
    prop_oneof![
        6 => common::any_atom().prop_map(Operand::from),
        1 => common::prime().prop_map(|p| Operand::Cover(CoverExpr::Xi(p))),
    ]
}

fn nonzero_value() -> impl Strategy<Value = Operand> {
    prop_oneof![
        common::core_atom().prop_map(Operand::from),
        common::prime().prop_map(|p| Operand::Cover(CoverExpr::Xi(p))),
    ]
}

fn sequence(vals: Vec<Option<Operand>>) -> SixTermSeq {
    let zero: Operand = GroupExpr::zero().into();
    let slots = vals
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            let f = if i < 3 { Functor::Hom } else { Functor::Ext };
            match v {
                Some(v) => Slot::known(f, zero.clone(), zero.clone(), v),
                None => Slot::unknown(f, zero.clone(), zero.clone()),
            }
        })
        .collect();
    SixTermSeq { label: "adversarial".into(), slots, coker: Vec::new() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn biadditive_in_both_arguments(f in functor(), a in core_expr(2), a2 in core_expr(2), b in core_expr(2), b2 in core_expr(2)) {
        let whole = expr_value(f, &direct_sum(&a, &a2), &b);
        if let (Some(w), Some(x), Some(y)) = (whole, expr_value(f, &a, &b), expr_value(f, &a2, &b)) {
            prop_assert_eq!(w, direct_sum(&x, &y));
        }
        let whole = expr_value(f, &a, &direct_sum(&b, &b2));
        if let (Some(w), Some(x), Some(y)) = (whole, expr_value(f, &a, &b), expr_value(f, &a, &b2)) {
            prop_assert_eq!(w, direct_sum(&x, &y));
        }
    }

    #[test]
    fn finite_groups_match_the_closed_formula(g in finite_group(), a in finite_group()) {
        let v = engine().ext(&g.to_expr().into(), &a.to_expr().into()).value;
        prop_assert_eq!(v, HomExtValue::Expr(ext_finite(&g, &a).to_expr()));
    }

    #[test]
    fn derivations_replay_and_cite_only_known_facts(f in functor(), a in term(), b in term()) {
        if let Ok(d) = engine().derive(f, &a, &b) {
            prop_assert_eq!(d.replay(), Some(d.value.clone()));
            let answer = engine().query(f, &a, &b);
            if let Some(v) = answer.value.operand() {
                prop_assert_eq!(v.normalized(), d.value.clone().normalized());
            }
            for c in &d.citations {
                prop_assert!(engine().facts().contains_id(&c.id), "unknown citation {}", c.id);
            }
            for step in &d.steps {
                if step.rule == "COKER-FACT" {
                    prop_assert!(step.inputs.iter().all(|id| engine().facts().contains_id(id)));
                }
            }
        }
    }

    #[test]
    fn answers_cite_only_known_facts(f in functor(), a in term(), b in term()) {
        let ans = engine().query(f, &a, &b);
        for c in &ans.citations {
            prop_assert!(engine().facts().contains_id(&c.id), "unknown citation {}", c.id);
        }
        if !ans.value.is_resolved() {
            prop_assert!(!ans.trace.is_empty());
        }
    }

    #[test]
    fn solver_leaves_nonzero_flanked_holes_alone(
        vals in prop::collection::vec(prop::option::weighted(0.7, nonzero_value()), 6),
    ) {
        let holes: Vec<usize> = (0..6).filter(|&i| vals[i].is_none()).collect();
        let flanked = holes.iter().all(|&h| h > 0 && h < 5 && vals[h - 1].is_some() && vals[h + 1].is_some());
        prop_assume!(!holes.is_empty() && flanked);
        match solve_les(&sequence(vals)) {
            Ok(assigned) => prop_assert!(assigned.is_empty(), "{:?}", assigned),
            Err(e) => prop_assert!(false, "nonzero sequence rejected: {e}"),
        }
    }
}

#[test]
fn duality_symmetry_on_atom_pairs() {
    let atoms: Vec<Atom> = all_atoms().into_iter().filter(|&a| a != Atom::OmegaTorus).collect();
    let mut compared = 0;
    for &a in &atoms {
        for &b in &atoms {
            let (da, db) = (dual_atom(a).unwrap(), dual_atom(b).unwrap());
            for f in [Functor::Hom, Functor::Ext] {
                let lhs = engine().query(f, &a.into(), &b.into()).value;
                let rhs = engine().query(f, &db.into(), &da.into()).value;
                if lhs.is_resolved() && rhs.is_resolved() {
                    compared += 1;
                    assert_eq!(lhs, rhs, "{f}({}, {})", a.ascii(), b.ascii());
                }
            }
        }
    }
    assert!(compared > 1000, "{compared}");
}

#[test]
fn vanishing_rules_hold_over_the_catalog() {
    let atoms = all_atoms();
    for &x in &atoms {
        for g in [Atom::Real, Atom::Circle, Atom::OmegaTorus] {
            assert!(engine().ext(&x.into(), &g.into()).value.is_zero(), "Ext({}, {})", x.ascii(), g.ascii());
        }
        for g in [Atom::Real, Atom::Int] {
            assert!(engine().ext(&g.into(), &x.into()).value.is_zero(), "Ext({}, {})", g.ascii(), x.ascii());
        }
    }
    let vt = GroupExpr::from_atoms([Atom::Real, Atom::Circle, Atom::OmegaTorus]).unwrap();
    let rz = GroupExpr::from_atoms([Atom::Real, Atom::Int, Atom::Int]).unwrap();
    for &x in &atoms {
        assert!(engine().ext(&x.into(), &vt.clone().into()).value.is_zero());
        assert!(engine().ext(&rz.clone().into(), &x.into()).value.is_zero());
    }
}

#[test]
fn seeded_facts_are_never_contradicted() {
    let report = audit_facts(engine());
    assert!(report.disagreements.is_empty(), "{:?}", report.disagreements);
    assert!(report.pairs_checked > 0);
}
