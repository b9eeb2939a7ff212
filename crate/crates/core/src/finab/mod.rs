//! Finite abelian groups: invariant factors, the closed-form Ext, cocycle
//! spaces, explicit extensions and the triangulation report.

mod cocycle;
mod crosscheck;
mod extension;
pub mod snf;

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;

use crate::expr::{factorize, Atom, GroupExpr};

pub use cocycle::{cocycle_group, enumerate_cocycles, Cocycle2, CocycleGroup, CocycleModules, CocycleSolver};
pub use crosscheck::{crosscheck, CrossCheck, Exhaustive, EXHAUSTIVE_BOUND};
pub use extension::{build_extension, ExtensionTable};

/// Largest `|G|` accepted by `cocycle_group`.
pub const MAX_GROUP_ORDER: u64 = 64;
/// Largest `|G|·|A|` accepted by `cocycle_group`.
pub const MAX_PRODUCT_ORDER: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FinAbError {
    #[error("not a finite group: {0}")]
    NotFinite(String),
    #[error("invariant factors must form a divisibility chain of integers >= 2: {0:?}")]
    BadFactors(Vec<u64>),
    #[error("size bound exceeded: {0}")]
    SizeBound(String),
    #[error("not a cocycle: {identity} fails at {at}")]
    NotACocycle { identity: &'static str, at: String },
    #[error("cocycle table has {got} entries, expected {expected}")]
    TableShape { got: usize, expected: usize },
}

/// Finite abelian group `Z/n_1 ⊕ … ⊕ Z/n_r` with `n_1 | n_2 | … | n_r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinAb {
    factors: Vec<u64>,
}

impl FinAb {
    /// Group generated by cyclic factors of the given orders, in invariant
    /// factor form. Orders 0 and 1 are dropped.
    pub fn new<I: IntoIterator<Item = u64>>(orders: I) -> FinAb {
        let mut by_prime: std::collections::BTreeMap<u64, Vec<u32>> = Default::default();
        for n in orders {
            if n <= 1 {
                continue;
            }
            for (p, e) in factorize(n) {
                by_prime.entry(p).or_default().push(e);
            }
        }
        let width = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut factors = vec![1u64; width];
        for (p, mut exps) in by_prime {
            exps.sort_unstable_by(|a, b| b.cmp(a));
            // Largest powers go into the last factor.
            for (i, e) in exps.into_iter().enumerate() {
                factors[width - 1 - i] *= p.pow(e);
            }
        }
        FinAb { factors }
    }

    pub fn from_invariant_factors(factors: Vec<u64>) -> Result<FinAb, FinAbError> {
        let ok = factors.iter().all(|&n| n >= 2) && factors.windows(2).all(|w| w[1] % w[0] == 0);
        if ok {
            Ok(FinAb { factors })
        } else {
            Err(FinAbError::BadFactors(factors))
        }
    }

    pub fn trivial() -> FinAb {
        FinAb { factors: Vec::new() }
    }

    pub fn cyclic(n: u64) -> FinAb {
        FinAb::new([n])
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    /// The order as prime exponents; exact where `order` would overflow.
    pub fn order_exponents(&self) -> BTreeMap<u64, u32> {
        let mut out = BTreeMap::new();
        for &f in &self.factors {
            for (p, e) in factorize(f) {
                *out.entry(p).or_insert(0) += e;
            }
        }
        out
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// Prime-power cyclic orders `(p, e)`, one per primary summand.
    pub fn elementary_divisors(&self) -> Vec<(u64, u32)> {
        let mut out: Vec<(u64, u32)> = self.factors.iter().flat_map(|&n| factorize(n)).collect();
        out.sort_unstable();
        out
    }

    pub fn to_expr(&self) -> GroupExpr {
        GroupExpr::from_atoms_unchecked(self.elementary_divisors().into_iter().map(|(p, e)| Atom::Cyclic(p, e)))
    }

    pub fn from_expr(g: &GroupExpr) -> Result<FinAb, FinAbError> {
        let mut orders = Vec::with_capacity(g.len());
        for &a in g.atoms() {
            match a {
                Atom::Cyclic(p, k) => orders.push(p.pow(k)),
                _ => return Err(FinAbError::NotFinite(g.ascii())),
            }
        }
        Ok(FinAb::new(orders))
    }

    /// Coordinates of the element with the given lexicographic index.
    pub fn coords(&self, mut idx: usize) -> Vec<u64> {
        let mut out = vec![0; self.factors.len()];
        for (slot, &n) in out.iter_mut().zip(&self.factors).rev() {
            *slot = idx as u64 % n;
            idx /= n as usize;
        }
        out
    }

    pub fn index(&self, coords: &[u64]) -> usize {
        coords
            .iter()
            .zip(&self.factors)
            .fold(0usize, |acc, (&x, &n)| acc * n as usize + (x % n) as usize)
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        let (a, b) = (self.coords(x), self.coords(y));
        let s: Vec<u64> = a.iter().zip(&b).map(|(u, v)| u + v).collect();
        self.index(&s)
    }

    pub fn neg(&self, x: usize) -> usize {
        let c: Vec<u64> = self.coords(x).iter().zip(&self.factors).map(|(&u, &n)| (n - u) % n).collect();
        self.index(&c)
    }

    /// Full addition table, row-major.
    pub fn add_table(&self) -> Vec<usize> {
        let n = self.order() as usize;
        let coords: Vec<Vec<u64>> = (0..n).map(|i| self.coords(i)).collect();
        let mut t = Vec::with_capacity(n * n);
        for a in &coords {
            for b in &coords {
                let s: Vec<u64> = a.iter().zip(b).map(|(u, v)| u + v).collect();
                t.push(self.index(&s));
            }
        }
        t
    }

    /// Indices of the standard generators, one per invariant factor.
    pub fn generators(&self) -> Vec<usize> {
        (0..self.factors.len())
            .map(|i| {
                let mut c = vec![0; self.factors.len()];
                c[i] = 1;
                self.index(&c)
            })
            .collect()
    }

    pub fn direct_sum(&self, other: &FinAb) -> FinAb {
        FinAb::new(self.factors.iter().chain(&other.factors).copied())
    }
}

impl fmt::Display for FinAb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.factors)
    }
}

/// `Ext(⊕ Z/n_i, ⊕ Z/m_j) = ⊕_{i,j} Z/gcd(n_i, m_j)`.
pub fn ext_finite(g: &FinAb, a: &FinAb) -> FinAb {
    FinAb::new(g.factors.iter().flat_map(|&n| a.factors.iter().map(move |&m| n.gcd(&m))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariant_factor_normalization() {
        assert_eq!(FinAb::new([2, 3]).factors(), &[6]);
        assert_eq!(FinAb::new([4, 2]).factors(), &[2, 4]);
        assert_eq!(FinAb::new([2, 2, 3]).factors(), &[2, 6]);
        assert_eq!(FinAb::new([1, 1]).factors(), &[] as &[u64]);
        assert_eq!(FinAb::new([12, 18]).factors(), &[6, 36]);
    }

    #[test]
    fn expr_round_trip() {
        let g = FinAb::new([2, 4, 3]);
        let e = g.to_expr();
        assert_eq!(e.ascii(), "C(2)+C(4)+C(3)");
        assert_eq!(FinAb::from_expr(&e).unwrap(), g);
        assert!(FinAb::from_expr(&Atom::Int.into()).is_err());
    }

    #[test]
    fn chain_validation() {
        assert!(FinAb::from_invariant_factors(vec![2, 4]).is_ok());
        assert!(FinAb::from_invariant_factors(vec![4, 2]).is_err());
        assert!(FinAb::from_invariant_factors(vec![1]).is_err());
    }

    #[test]
    fn element_indexing() {
        let g = FinAb::new([2, 4]);
        assert_eq!(g.coords(5), vec![1, 1]);
        assert_eq!(g.index(&[1, 1]), 5);
        assert_eq!(g.add(5, 5), g.index(&[0, 2]));
        assert_eq!(g.add(g.neg(3), 3), 0);
        assert_eq!(g.generators(), vec![4, 1]);
    }

    #[test]
    fn ext_formula_examples() {
        assert_eq!(ext_finite(&FinAb::cyclic(4), &FinAb::cyclic(2)), FinAb::cyclic(2));
        assert!(ext_finite(&FinAb::cyclic(2), &FinAb::cyclic(3)).is_trivial());
        assert_eq!(ext_finite(&FinAb::new([2, 4]), &FinAb::cyclic(4)), FinAb::new([2, 4]));
    }
}
