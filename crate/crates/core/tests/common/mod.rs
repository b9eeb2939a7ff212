#![allow(dead_code)]

use lcacalc_core::expr::{Atom, GroupExpr};
use proptest::prelude::*;

pub const PRIMES: [u64; 3] = [2, 3, 5];

pub fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(PRIMES.to_vec())
}

/// The nine core atoms with primes in {2,3,5} and exponents up to 3.
pub fn core_atom() -> impl Strategy<Value = Atom> {
    prop_oneof![
        Just(Atom::Real),
        Just(Atom::Circle),
        Just(Atom::Solenoid),
        Just(Atom::Int),
        Just(Atom::Rat),
        prime().prop_map(Atom::PadicInt),
        prime().prop_map(Atom::PadicRat),
        (prime(), 1u32..=3).prop_map(|(p, k)| Atom::Cyclic(p, k)),
        prime().prop_map(Atom::Prufer),
    ]
}

/// Core atoms plus the extended ones.
pub fn any_atom() -> impl Strategy<Value = Atom> {
    prop_oneof![
        4 => core_atom(),
        1 => Just(Atom::OmegaTorus),
        1 => prime().prop_map(Atom::OmegaProd),
        1 => prime().prop_map(Atom::OmegaSum),
    ]
}

pub fn expr_of(atom: impl Strategy<Value = Atom>, max: usize) -> impl Strategy<Value = GroupExpr> {
    prop::collection::vec(atom, 0..=max).prop_map(|v| GroupExpr::from_atoms(v).expect("valid atoms"))
}

pub fn core_expr(max: usize) -> impl Strategy<Value = GroupExpr> {
    expr_of(core_atom(), max)
}

pub fn any_expr(max: usize) -> impl Strategy<Value = GroupExpr> {
    expr_of(any_atom(), max)
}

pub fn all_core_atoms() -> Vec<Atom> {
    let mut out = vec![Atom::Real, Atom::Circle, Atom::Solenoid, Atom::Int, Atom::Rat];
    for p in PRIMES {
        out.extend([Atom::PadicInt(p), Atom::PadicRat(p), Atom::Prufer(p)]);
        out.extend((1..=3).map(|k| Atom::Cyclic(p, k)));
    }
    out
}

pub fn all_atoms() -> Vec<Atom> {
    let mut out = all_core_atoms();
    out.push(Atom::OmegaTorus);
    for p in PRIMES {
        out.extend([Atom::OmegaProd(p), Atom::OmegaSum(p)]);
    }
    out
}
