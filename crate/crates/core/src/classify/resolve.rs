//! Length-one resolutions by essentially injective groups, and quotients of
//! vector groups by finitely generated subgroups.

use super::category::ClassifyError;
use crate::cover::{CoverExpr, Operand};
use crate::expr::{Atom, GroupExpr};
use crate::finab::{snf::integer_invariant_factors, FinAb};

/// `0 → target → d0 → d1 → 0`. When `d1_symbolic` is nonempty the true `d1`
/// is `d1 ⊕ d1_symbolic`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    pub target: GroupExpr,
    pub d0: GroupExpr,
    pub d1: GroupExpr,
    pub d1_symbolic: Vec<CoverExpr>,
}

/// Membership in the essentially injective class: vector groups, tori and
/// countable divisible groups.
pub fn is_essentially_injective(g: &GroupExpr) -> bool {
    g.all(|a| matches!(a, Atom::Real | Atom::Circle | Atom::OmegaTorus | Atom::Rat | Atom::Prufer(_)))
}

fn resolve_atom(a: Atom) -> Result<(GroupExpr, GroupExpr, Option<CoverExpr>), ClassifyError> {
    let zero = GroupExpr::zero();
    Ok(match a {
        Atom::Int => (Atom::Real.into(), Atom::Circle.into(), None),
        Atom::Cyclic(p, _) => (Atom::Prufer(p).into(), Atom::Prufer(p).into(), None),
        Atom::Real | Atom::Circle | Atom::OmegaTorus | Atom::Rat | Atom::Prufer(_) => (a.into(), zero, None),
        Atom::PadicInt(p) => (
            Atom::OmegaTorus.into(),
            zero,
            Some(CoverExpr::TaggedCoker {
                ambient: Atom::OmegaTorus.into(),
                kernel: Atom::PadicInt(p).into(),
                note: format!("cokernel of a closed embedding of Zp({p}) in T^w"),
            }),
        ),
        Atom::PadicRat(_) | Atom::Solenoid | Atom::OmegaProd(_) | Atom::OmegaSum(_) => {
            return Err(ClassifyError::ResolutionUnsupported(a.ascii()))
        }
    })
}

pub fn resolve(g: &GroupExpr) -> Result<Resolution, ClassifyError> {
    let mut d0 = Vec::new();
    let mut d1 = Vec::new();
    let mut d1_symbolic = Vec::new();
    for &a in g.atoms() {
        let (x, y, sym) = resolve_atom(a)?;
        d0.extend_from_slice(x.atoms());
        d1.extend_from_slice(y.atoms());
        d1_symbolic.extend(sym);
    }
    Ok(Resolution {
        target: g.clone(),
        d0: GroupExpr::from_atoms_unchecked(d0),
        d1: GroupExpr::from_atoms_unchecked(d1),
        d1_symbolic,
    })
}

/// Finite shadow of `0 → Z(p^k) → Z(p^∞) → Z(p^∞) → 0` (multiplication by
/// `p^k`): the sequence `Z(p^k) → Z(p^(k+m)) → Z(p^m)` with `x ↦ p^m x` and
/// reduction mod `p^m`. Checked element by element, and the cokernel of the
/// first map is compared with the third group through invariant factors.
pub fn cyclic_truncation_exact(p: u64, k: u32, m: u32) -> bool {
    let a = p.pow(k);
    let b = p.pow(k + m);
    let c = p.pow(m);
    let incl = |x: u64| (x * c) % b;
    let quot = |y: u64| y % c;
    let injective = (1..a).all(|x| incl(x) != 0);
    let hom_i = (0..a).all(|x| (0..a).all(|y| incl((x + y) % a) == (incl(x) + incl(y)) % b));
    let hom_q = (0..b).all(|x| (0..b).all(|y| quot((x + y) % b) == (quot(x) + quot(y)) % c));
    let surjective = (0..c).all(|z| (0..b).any(|y| quot(y) == z));
    let image: Vec<u64> = (0..a).map(incl).collect();
    let exact_middle = (0..b).all(|y| (quot(y) == 0) == image.contains(&y));
    // B / i(A) presented as Z / (bZ + cZ).
    let coker = FinAb::new(integer_invariant_factors(&[vec![b as i128], vec![c as i128]], 1));
    let third = FinAb::cyclic(c);
    injective && hom_i && hom_q && surjective && exact_middle && coker == third
}

/// `R^n / G` for a finitely generated `G` whose span has dimension
/// `closed_rank` and whose rank exceeds that dimension by `dense_excess`.
pub fn vector_quotient(n: u32, closed_rank: u32, dense_excess: u32) -> Result<Operand, ClassifyError> {
    if closed_rank > n {
        return Err(ClassifyError::RankOverflow(format!(
            "lattice spans {closed_rank} dimensions inside R^{n}"
        )));
    }
    if closed_rank == 0 && dense_excess > 0 {
        return Err(ClassifyError::RankOverflow(
            "a nonzero subgroup spans at least one dimension".into(),
        ));
    }
    let vector = GroupExpr::atom(Atom::Real).power((n - closed_rank) as usize);
    let torus = GroupExpr::atom(Atom::Circle).power(closed_rank as usize);
    let ambient = vector.direct_sum(&torus);
    if dense_excess == 0 {
        Ok(Operand::Expr(ambient))
    } else {
        Ok(Operand::Cover(CoverExpr::DenseFree { ambient, kernel_rank: dense_excess }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resolution_examples() {
        let r = resolve(&Atom::Int.into()).unwrap();
        assert_eq!((r.d0.ascii(), r.d1.ascii()), ("R".into(), "T".into()));
        let r = resolve(&Atom::Cyclic(2, 1).into()).unwrap();
        assert_eq!((r.d0.ascii(), r.d1.ascii()), ("Pr(2)".into(), "Pr(2)".into()));
        let r = resolve(&Atom::Circle.into()).unwrap();
        assert_eq!((r.d0.ascii(), r.d1.ascii()), ("T".into(), "0".into()));
        let r = resolve(&Atom::PadicInt(3).into()).unwrap();
        assert_eq!(r.d0.ascii(), "T^w");
        assert_eq!(r.d1_symbolic.len(), 1);
        assert!(resolve(&Atom::Solenoid.into()).is_err());
    }

    #[test]
    fn truncations() {
        for (p, k, m) in [(2, 1, 1), (2, 1, 3), (3, 2, 1), (5, 1, 2)] {
            assert!(cyclic_truncation_exact(p, k, m));
        }
    }

    #[test]
    fn vector_quotients() {
        assert_eq!(vector_quotient(1, 1, 0).unwrap().ascii(), "T");
        assert_eq!(vector_quotient(2, 2, 0).unwrap().ascii(), "T^2");
        assert_eq!(vector_quotient(3, 1, 0).unwrap().ascii(), "R^2+T");
        match vector_quotient(1, 1, 1).unwrap() {
            Operand::Cover(CoverExpr::DenseFree { ambient, kernel_rank }) => {
                assert_eq!(ambient.ascii(), "T");
                assert_eq!(kernel_rank, 1);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(vector_quotient(1, 2, 0).is_err());
        assert!(vector_quotient(2, 0, 1).is_err());
    }
}
