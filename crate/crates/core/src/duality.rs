//! Pontryagin duality on expressions, atom by atom.

use thiserror::Error;

use crate::expr::{Atom, GroupExpr};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DualityError {
    #[error("dual of {0} is not representable (it would be a countable free sum of copies of Z)")]
    DualUnsupported(String),
}

pub fn dual_atom(a: Atom) -> Result<Atom, DualityError> {
    Ok(match a {
        Atom::Int => Atom::Circle,
        Atom::Circle => Atom::Int,
        Atom::Real => Atom::Real,
        Atom::Rat => Atom::Solenoid,
        Atom::Solenoid => Atom::Rat,
        Atom::Cyclic(p, k) => Atom::Cyclic(p, k),
        Atom::Prufer(p) => Atom::PadicInt(p),
        Atom::PadicInt(p) => Atom::Prufer(p),
        Atom::PadicRat(p) => Atom::PadicRat(p),
        Atom::OmegaProd(p) => Atom::OmegaSum(p),
        Atom::OmegaSum(p) => Atom::OmegaProd(p),
        Atom::OmegaTorus => return Err(DualityError::DualUnsupported(a.ascii())),
    })
}

pub fn dual(g: &GroupExpr) -> Result<GroupExpr, DualityError> {
    let atoms = g.atoms().iter().map(|&a| dual_atom(a)).collect::<Result<Vec<_>, _>>()?;
    Ok(GroupExpr::from_atoms_unchecked(atoms))
}

pub fn is_codivisible(g: &GroupExpr) -> Result<bool, DualityError> {
    Ok(crate::classify::properties(&dual(g)?).divisible)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_entries() {
        assert_eq!(dual_atom(Atom::Prufer(2)), Ok(Atom::PadicInt(2)));
        assert_eq!(dual_atom(Atom::Int), Ok(Atom::Circle));
        assert_eq!(dual_atom(Atom::Solenoid), Ok(Atom::Rat));
        assert_eq!(dual_atom(Atom::PadicRat(3)), Ok(Atom::PadicRat(3)));
        assert!(dual_atom(Atom::OmegaTorus).is_err());
    }

    #[test]
    fn codivisibility_examples() {
        assert_eq!(is_codivisible(&Atom::PadicInt(5).into()), Ok(true));
        assert_eq!(is_codivisible(&Atom::Circle.into()), Ok(false));
        assert_eq!(is_codivisible(&Atom::Cyclic(3, 2).into()), Ok(false));
        assert!(is_codivisible(&Atom::OmegaTorus.into()).is_err());
    }
}
