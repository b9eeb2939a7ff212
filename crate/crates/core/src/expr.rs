//! Atoms, finite direct sums of atoms, and their canonical form.

use std::fmt;

use thiserror::Error;

/// One indecomposable building block.
///
/// The variant order is the canonical summand order; within a variant atoms
/// sort by prime, then by exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Real,
    Circle,
    OmegaTorus,
    Solenoid,
    Int,
    Rat,
    PadicInt(u64),
    PadicRat(u64),
    OmegaProd(u64),
    Cyclic(u64, u32),
    Prufer(u64),
    OmegaSum(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("invalid atom: {0}")]
    InvalidAtom(String),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorisation as (prime, exponent) pairs in increasing prime order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut e = 0;
        while n.is_multiple_of(d) {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

impl Atom {
    pub fn prime(self) -> Option<u64> {
        match self {
            Atom::PadicInt(p)
            | Atom::PadicRat(p)
            | Atom::OmegaProd(p)
            | Atom::Cyclic(p, _)
            | Atom::Prufer(p)
            | Atom::OmegaSum(p) => Some(p),
            _ => None,
        }
    }

    pub fn is_extended(self) -> bool {
        matches!(self, Atom::OmegaTorus | Atom::OmegaProd(_) | Atom::OmegaSum(_))
    }

    pub fn is_core(self) -> bool {
        !self.is_extended()
    }

    /// Order of a finite atom.
    pub fn order(self) -> Option<u64> {
        match self {
            Atom::Cyclic(p, k) => Some(p.pow(k)),
            _ => None,
        }
    }

    pub fn validate(self) -> Result<Self, ExprError> {
        if let Some(p) = self.prime() {
            if !is_prime(p) {
                return Err(ExprError::InvalidAtom(format!("{p} is not prime in {}", self.ascii())));
            }
        }
        if let Atom::Cyclic(_, 0) = self {
            return Err(ExprError::InvalidAtom("cyclic exponent must be at least 1".into()));
        }
        Ok(self)
    }

    /// Input-grammar spelling.
    pub fn ascii(self) -> String {
        match self {
            Atom::Real => "R".into(),
            Atom::Circle => "T".into(),
            Atom::OmegaTorus => "T^w".into(),
            Atom::Solenoid => "Sol".into(),
            Atom::Int => "Z".into(),
            Atom::Rat => "Q".into(),
            Atom::PadicInt(p) => format!("Zp({p})"),
            Atom::PadicRat(p) => format!("Qp({p})"),
            Atom::OmegaProd(p) => format!("PC({p})"),
            Atom::Cyclic(p, k) => format!("C({})", p.pow(k)),
            Atom::Prufer(p) => format!("Pr({p})"),
            Atom::OmegaSum(p) => format!("SC({p})"),
        }
    }

    pub fn unicode(self) -> String {
        match self {
            Atom::Real => "ℝ".into(),
            Atom::Circle => "𝕋".into(),
            Atom::OmegaTorus => "𝕋^ω".into(),
            Atom::Solenoid => "ℚ^∨".into(),
            Atom::Int => "ℤ".into(),
            Atom::Rat => "ℚ".into(),
            Atom::PadicInt(p) => format!("ℤ_{p}"),
            Atom::PadicRat(p) => format!("ℚ_{p}"),
            Atom::OmegaProd(p) => format!("(ℤ/{p}ℤ)^ω"),
            Atom::Cyclic(p, 1) => format!("ℤ({p})"),
            Atom::Cyclic(p, k) => format!("ℤ({p}^{k})"),
            Atom::Prufer(p) => format!("ℤ({p}^∞)"),
            Atom::OmegaSum(p) => format!("(ℤ/{p}ℤ)^(ω)"),
        }
    }
}

/// Atom descriptor accepted by [`normalize`]; cyclic groups may have any order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RawAtom {
    Atom(Atom),
    CyclicOfOrder(u64),
}

/// Finite direct sum of atoms kept in canonical order. The empty sum is 0.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupExpr {
    atoms: Vec<Atom>,
}

pub fn normalize(raw: &[RawAtom]) -> Result<GroupExpr, ExprError> {
    let mut atoms = Vec::with_capacity(raw.len());
    for r in raw {
        match *r {
            RawAtom::Atom(a) => atoms.push(a.validate()?),
            RawAtom::CyclicOfOrder(0) => {
                return Err(ExprError::InvalidAtom("cyclic order must be positive".into()))
            }
            RawAtom::CyclicOfOrder(n) => {
                atoms.extend(factorize(n).into_iter().map(|(p, k)| Atom::Cyclic(p, k)))
            }
        }
    }
    atoms.sort();
    Ok(GroupExpr { atoms })
}

impl GroupExpr {
    pub fn zero() -> Self {
        GroupExpr::default()
    }

    pub fn atom(a: Atom) -> Self {
        GroupExpr { atoms: vec![a] }
    }

    /// Validating constructor from atoms in any order.
    pub fn from_atoms<I: IntoIterator<Item = Atom>>(atoms: I) -> Result<Self, ExprError> {
        let raw: Vec<RawAtom> = atoms.into_iter().map(RawAtom::Atom).collect();
        normalize(&raw)
    }

    /// Cyclic group of order `n`, split into prime powers.
    pub fn cyclic(n: u64) -> Result<Self, ExprError> {
        normalize(&[RawAtom::CyclicOfOrder(n)])
    }

    pub(crate) fn from_atoms_unchecked<I: IntoIterator<Item = Atom>>(atoms: I) -> Self {
        let mut atoms: Vec<Atom> = atoms.into_iter().collect();
        atoms.sort();
        GroupExpr { atoms }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn all(&self, pred: impl Fn(Atom) -> bool) -> bool {
        self.atoms.iter().all(|&a| pred(a))
    }

    pub fn any(&self, pred: impl Fn(Atom) -> bool) -> bool {
        self.atoms.iter().any(|&a| pred(a))
    }

    pub fn filter(&self, pred: impl Fn(Atom) -> bool) -> GroupExpr {
        GroupExpr { atoms: self.atoms.iter().copied().filter(|&a| pred(a)).collect() }
    }

    pub fn direct_sum(&self, other: &GroupExpr) -> GroupExpr {
        let mut atoms = Vec::with_capacity(self.atoms.len() + other.atoms.len());
        atoms.extend_from_slice(&self.atoms);
        atoms.extend_from_slice(&other.atoms);
        atoms.sort();
        GroupExpr { atoms }
    }

    /// `n` copies of `self`.
    pub fn power(&self, n: usize) -> GroupExpr {
        let mut out = GroupExpr::zero();
        for _ in 0..n {
            out = out.direct_sum(self);
        }
        out
    }

    /// Sorted list of primes attached to any summand.
    pub fn primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self.atoms.iter().filter_map(|a| a.prime()).collect();
        ps.sort_unstable();
        ps.dedup();
        ps
    }

    /// Input-grammar rendering; `parse` reads it back to the same expression.
    pub fn ascii(&self) -> String {
        self.render(Atom::ascii, "+")
    }

    pub fn unicode(&self) -> String {
        self.render(Atom::unicode, " ⊕ ")
    }

    fn render(&self, name: impl Fn(Atom) -> String, sep: &str) -> String {
        if self.atoms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.atoms.len() {
            let a = self.atoms[i];
            let mut j = i;
            while j < self.atoms.len() && self.atoms[j] == a {
                j += 1;
            }
            let n = j - i;
            if n == 1 {
                parts.push(name(a));
            } else {
                parts.push(format!("{}^{n}", name(a)));
            }
            i = j;
        }
        parts.join(sep)
    }
}

pub fn iso_equal(a: &GroupExpr, b: &GroupExpr) -> bool {
    a.atoms == b.atoms
}

pub fn direct_sum(a: &GroupExpr, b: &GroupExpr) -> GroupExpr {
    a.direct_sum(b)
}

impl From<Atom> for GroupExpr {
    fn from(a: Atom) -> Self {
        GroupExpr::atom(a)
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.unicode())
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.unicode())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composite_cyclic_splits() {
        let g = normalize(&[RawAtom::CyclicOfOrder(6)]).unwrap();
        assert_eq!(g.atoms(), &[Atom::Cyclic(2, 1), Atom::Cyclic(3, 1)]);
        assert!(normalize(&[RawAtom::CyclicOfOrder(1)]).unwrap().is_zero());
        assert!(normalize(&[]).unwrap().is_zero());
    }

    #[test]
    fn canonical_reordering() {
        let g = normalize(&[
            RawAtom::CyclicOfOrder(3),
            RawAtom::Atom(Atom::Int),
            RawAtom::CyclicOfOrder(2),
        ])
        .unwrap();
        assert_eq!(g.ascii(), "Z+C(2)+C(3)");
    }

    #[test]
    fn invalid_atoms_rejected() {
        assert!(normalize(&[RawAtom::Atom(Atom::Prufer(4))]).is_err());
        assert!(normalize(&[RawAtom::Atom(Atom::Cyclic(2, 0))]).is_err());
        assert!(normalize(&[RawAtom::CyclicOfOrder(0)]).is_err());
    }

    #[test]
    fn multiset_semantics() {
        let c2 = GroupExpr::cyclic(2).unwrap();
        let s = c2.direct_sum(&c2);
        assert_eq!(s.len(), 2);
        assert!(!iso_equal(&s, &GroupExpr::cyclic(4).unwrap()));
        assert_eq!(s.ascii(), "C(2)^2");
        assert_eq!(GroupExpr::atom(Atom::OmegaTorus).power(2).ascii(), "T^w^2");
    }

    #[test]
    fn total_order_matches_catalog() {
        let order = [
            Atom::Real,
            Atom::Circle,
            Atom::OmegaTorus,
            Atom::Solenoid,
            Atom::Int,
            Atom::Rat,
            Atom::PadicInt(2),
            Atom::PadicRat(2),
            Atom::OmegaProd(2),
            Atom::Cyclic(2, 1),
            Atom::Prufer(2),
            Atom::OmegaSum(2),
        ];
        assert!(order.windows(2).all(|w| w[0] < w[1]));
        assert!(Atom::Cyclic(2, 3) < Atom::Cyclic(3, 1));
        assert!(Atom::Cyclic(3, 1) < Atom::Cyclic(3, 2));
    }
}
