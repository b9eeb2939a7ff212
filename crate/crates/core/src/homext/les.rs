//! Short exact sequences, their six-term Hom/Ext sequences, and the
//! zero-flank solver.

use std::fmt;

use thiserror::Error;

use super::engine::{Engine, Goal, QueryCx};
use super::value::{Citation, Functor, Term};
use crate::cover::{CoverExpr, Operand};
use crate::expr::{Atom, GroupExpr};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LesError {
    #[error("inconsistent sequence: {0}")]
    InconsistentSequence(String),
    #[error("incompatible operands: {0}")]
    IncompatibleOperands(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variance {
    /// `0 → Hom(c,x) → Hom(b,x) → Hom(a,x) → Ext(c,x) → Ext(b,x) → Ext(a,x) → 0`
    FirstArgument,
    /// `0 → Hom(x,a) → Hom(x,b) → Hom(x,c) → Ext(x,a) → Ext(x,b) → Ext(x,c) → 0`
    SecondArgument,
}

/// `0 → a → b → c → 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ShortExactSeq {
    pub a: Operand,
    pub b: Operand,
    pub c: Operand,
    pub label: String,
}

impl ShortExactSeq {
    pub fn new(a: impl Into<Operand>, b: impl Into<Operand>, c: impl Into<Operand>, label: impl Into<String>) -> Self {
        ShortExactSeq { a: a.into().normalized(), b: b.into().normalized(), c: c.into().normalized(), label: label.into() }
    }

    /// Slot operands in sequence order, each paired with its functor.
    fn slot_operands(&self, x: &Operand, v: Variance) -> Vec<(Functor, Operand, Operand)> {
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let order = match v {
            Variance::FirstArgument => [c, b, a],
            Variance::SecondArgument => [a, b, c],
        };
        [Functor::Hom, Functor::Ext]
            .into_iter()
            .flat_map(|f| {
                order.into_iter().map(move |y| match v {
                    Variance::FirstArgument => (f, y.clone(), x.clone()),
                    Variance::SecondArgument => (f, x.clone(), y.clone()),
                })
            })
            .collect()
    }
}

impl fmt::Display for ShortExactSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0 -> {} -> {} -> {} -> 0", self.a.ascii(), self.b.ascii(), self.c.ascii())
    }
}

/// The catalog instances for the given primes and exponents up to `max_exp`.
pub fn ses_catalog(primes: &[u64], max_exp: u32) -> Vec<ShortExactSeq> {
    let mut out = vec![ShortExactSeq::new(Atom::Int, Atom::Real, Atom::Circle, "Z -> R -> T")];
    for &p in primes {
        out.push(ShortExactSeq::new(
            Atom::PadicInt(p),
            Atom::PadicRat(p),
            Atom::Prufer(p),
            format!("Zp({p}) -> Qp({p}) -> Pr({p})"),
        ));
        for k in 1..=max_exp {
            let c = Atom::Cyclic(p, k);
            out.push(ShortExactSeq::new(Atom::Int, Atom::Int, c, format!("Z -> Z -> {} (times {})", c.ascii(), p.pow(k))));
            out.push(ShortExactSeq::new(
                Atom::PadicInt(p),
                Atom::PadicInt(p),
                c,
                format!("Zp({p}) -> Zp({p}) -> {} (times {})", c.ascii(), p.pow(k)),
            ));
            for j in 1..=max_exp.saturating_sub(k) {
                let (a, b, c) = (Atom::Cyclic(p, k), Atom::Cyclic(p, k + j), Atom::Cyclic(p, j));
                out.push(ShortExactSeq::new(a, b, c, format!("{} -> {} -> {}", a.ascii(), b.ascii(), c.ascii())));
            }
        }
        out.push(ShortExactSeq::new(
            Atom::OmegaSum(p),
            Atom::OmegaProd(p),
            CoverExpr::Xi(p),
            format!("SC({p}) -> PC({p}) -> Xi({p})"),
        ));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slot {
    pub functor: Functor,
    pub left: Operand,
    pub right: Operand,
    /// `None` is an unknown slot.
    pub value: Option<Operand>,
    pub rules: Vec<String>,
    pub citations: Vec<Citation>,
}

impl Slot {
    pub fn label(&self) -> String {
        format!("{}({}, {})", self.functor, self.left.ascii(), self.right.ascii())
    }

    pub fn unknown(functor: Functor, left: Operand, right: Operand) -> Self {
        Slot { functor, left, right, value: None, rules: Vec::new(), citations: Vec::new() }
    }

    pub fn known(functor: Functor, left: Operand, right: Operand, value: Operand) -> Self {
        Slot { functor, left, right, value: Some(value), rules: Vec::new(), citations: Vec::new() }
    }
}

/// The cokernel of the map from slot `from` to slot `from + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CokerFact {
    pub from: usize,
    pub value: Operand,
    pub citation: Citation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SixTermSeq {
    pub label: String,
    pub slots: Vec<Slot>,
    pub coker: Vec<CokerFact>,
}

impl SixTermSeq {
    pub fn render(&self) -> String {
        let parts: Vec<String> = self
            .slots
            .iter()
            .map(|s| match &s.value {
                Some(v) => format!("{} = {}", s.label(), v.ascii()),
                None => format!("{} = ?", s.label()),
            })
            .collect();
        format!("0 -> {} -> 0", parts.join(" -> "))
    }
}

#[derive(Clone, Copy)]
enum Cell<'a> {
    Zero,
    NonZero(&'a Operand),
    Unknown,
}

fn cell(vals: &[Option<Operand>], i: isize) -> Cell<'_> {
    if i < 0 || i >= vals.len() as isize {
        return Cell::Zero;
    }
    match &vals[i as usize] {
        None => Cell::Unknown,
        Some(v) if v.is_zero() => Cell::Zero,
        Some(v) => Cell::NonZero(v),
    }
}

fn is_zero(c: Cell<'_>) -> bool {
    matches!(c, Cell::Zero)
}

fn check(vals: &[Option<Operand>], coker: &[CokerFact]) -> Result<(), LesError> {
    for i in 0..vals.len() as isize {
        if let Cell::NonZero(k) = cell(vals, i) {
            if is_zero(cell(vals, i - 1)) && is_zero(cell(vals, i + 1)) {
                return Err(LesError::InconsistentSequence(format!(
                    "slot {i} is {} between two zeros",
                    k.ascii()
                )));
            }
            if let Cell::NonZero(m) = cell(vals, i + 1) {
                if is_zero(cell(vals, i - 1)) && is_zero(cell(vals, i + 2)) && k != m {
                    return Err(LesError::InconsistentSequence(format!(
                        "0 -> {} -> {} -> 0 forces an isomorphism",
                        k.ascii(),
                        m.ascii()
                    )));
                }
            }
        }
    }
    for cf in coker {
        let target = cf.from as isize + 2;
        if let Some(v) = vals.get(target as usize).and_then(|v| v.as_ref()) {
            if is_zero(cell(vals, target + 1)) && *v != cf.value {
                return Err(LesError::InconsistentSequence(format!(
                    "slot {target} is {} but the cokernel fact {} gives {}",
                    v.ascii(),
                    cf.citation.id,
                    cf.value.ascii()
                )));
            }
        }
    }
    Ok(())
}

fn forced(vals: &[Option<Operand>], i: usize, coker: &[CokerFact]) -> Option<Operand> {
    let i = i as isize;
    let (l1, r1) = (cell(vals, i - 1), cell(vals, i + 1));
    if is_zero(l1) && is_zero(r1) {
        return Some(Operand::Expr(GroupExpr::zero()));
    }
    if let (Cell::NonZero(k), true, true) = (l1, is_zero(cell(vals, i - 2)), is_zero(r1)) {
        return Some(k.clone());
    }
    if let (true, Cell::NonZero(k), true) = (is_zero(l1), r1, is_zero(cell(vals, i + 2))) {
        return Some(k.clone());
    }
    if is_zero(r1) {
        if let Some(cf) = coker.iter().find(|cf| cf.from as isize + 2 == i) {
            return Some(cf.value.clone());
        }
    }
    None
}

/// Values forced by exactness on the unknown slots, as `(slot, value)`.
pub fn solve_les(s: &SixTermSeq) -> Result<Vec<(usize, Operand)>, LesError> {
    let mut vals: Vec<Option<Operand>> = s.slots.iter().map(|x| x.value.clone()).collect();
    check(&vals, &s.coker)?;
    let mut out = Vec::new();
    loop {
        let mut changed = false;
        for i in 0..vals.len() {
            if vals[i].is_none() {
                if let Some(v) = forced(&vals, i, &s.coker) {
                    vals[i] = Some(v.clone());
                    out.push((i, v));
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
        check(&vals, &s.coker)?;
    }
    Ok(out)
}

impl Engine {
    pub fn emit_les(&self, s: &ShortExactSeq, x: &Operand, v: Variance) -> Result<SixTermSeq, LesError> {
        self.emit_les_cx(s, x, v, &self.root_cx())
    }

    pub(crate) fn emit_les_cx(
        &self,
        s: &ShortExactSeq,
        x: &Operand,
        v: Variance,
        cx: &QueryCx,
    ) -> Result<SixTermSeq, LesError> {
        let is_cover = |o: &Operand| matches!(o, Operand::Cover(_));
        if is_cover(x) && [&s.a, &s.b, &s.c].into_iter().any(is_cover) {
            return Err(LesError::IncompatibleOperands(format!(
                "cover {} against a sequence containing a cover ({})",
                x.ascii(),
                s.label
            )));
        }
        let slots = s
            .slot_operands(x, v)
            .into_iter()
            .map(|(f, l, r)| {
                let ans = self.query_cx(f, &l, &r, cx);
                let mut rules: Vec<String> = ans.trace.iter().map(|t| t.rule.clone()).collect();
                rules.dedup();
                Slot { functor: f, left: l, right: r, value: ans.value.operand(), rules, citations: ans.citations }
            })
            .collect();
        let mut coker = Vec::new();
        if v == Variance::FirstArgument {
            let single = |o: &Operand| {
                let t = Term::split(o);
                (t.len() == 1).then(|| t[0].clone())
            };
            if let (Some(b), Some(a), Some(xt)) = (single(&s.b), single(&s.a), single(x)) {
                if let Some((value, fact)) = self.facts().coker(&b, &a, &xt) {
                    coker.push(CokerFact { from: 1, value, citation: fact.citation.clone() });
                }
            }
        }
        Ok(SixTermSeq { label: s.label.clone(), slots, coker })
    }

    /// Catalog sequences in which `goal` occupies a slot, with that slot.
    pub(crate) fn candidates(&self, goal: &Goal) -> Vec<(ShortExactSeq, Operand, Variance, Vec<usize>)> {
        let mut primes: Vec<u64> = Vec::new();
        let mut max_exp = 1;
        for op in [&goal.a, &goal.b] {
            for t in Term::split(op) {
                match t {
                    Term::Atom(a) => {
                        primes.extend(a.prime());
                        if let Atom::Cyclic(_, k) = a {
                            max_exp = max_exp.max(k);
                        }
                    }
                    Term::Cover(CoverExpr::Xi(p)) => primes.push(p),
                    Term::Cover(_) => {}
                }
            }
        }
        primes.sort_unstable();
        primes.dedup();
        let mut out = Vec::new();
        for s in ses_catalog(&primes, (max_exp + 1).min(4)) {
            for (v, x) in [(Variance::FirstArgument, &goal.b), (Variance::SecondArgument, &goal.a)] {
                let slots: Vec<usize> = s
                    .slot_operands(x, v)
                    .iter()
                    .enumerate()
                    .filter(|(_, (f, l, r))| *f == goal.functor && *l == goal.a && *r == goal.b)
                    .map(|(i, _)| i)
                    .collect();
                if !slots.is_empty() {
                    out.push((s.clone(), x.clone(), v, slots));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: Atom) -> Operand {
        a.into()
    }

    fn zero() -> Operand {
        GroupExpr::zero().into()
    }

    fn seq(vals: [Option<Operand>; 6]) -> SixTermSeq {
        SixTermSeq {
            label: "test".into(),
            slots: vals
                .into_iter()
                .map(|v| Slot { functor: Functor::Hom, left: zero(), right: zero(), value: v, rules: vec![], citations: vec![] })
                .collect(),
            coker: Vec::new(),
        }
    }

    #[test]
    fn zero_flanks() {
        let s = seq([Some(zero()), None, Some(zero()), Some(q(Atom::Int)), Some(q(Atom::Int)), Some(zero())]);
        assert_eq!(solve_les(&s).unwrap(), vec![(1, zero())]);
    }

    #[test]
    fn iso_forced() {
        let s = seq([Some(zero()), Some(zero()), Some(q(Atom::Rat)), None, Some(zero()), Some(zero())]);
        assert_eq!(solve_les(&s).unwrap(), vec![(3, q(Atom::Rat))]);
        let s = seq([Some(zero()), None, Some(q(Atom::Rat)), Some(zero()), Some(zero()), Some(zero())]);
        assert_eq!(solve_les(&s).unwrap(), vec![(1, q(Atom::Rat))]);
    }

    #[test]
    fn ambiguous_left_alone() {
        let s = seq([Some(zero()), Some(q(Atom::Int)), None, Some(q(Atom::Rat)), Some(zero()), Some(zero())]);
        assert!(solve_les(&s).unwrap().is_empty());
    }

    #[test]
    fn inconsistent_detected() {
        let s = seq([Some(zero()), Some(q(Atom::Int)), Some(zero()), None, None, None]);
        assert!(matches!(solve_les(&s), Err(LesError::InconsistentSequence(_))));
        let s = seq([Some(zero()), Some(q(Atom::Int)), Some(q(Atom::Rat)), Some(zero()), None, None]);
        assert!(matches!(solve_les(&s), Err(LesError::InconsistentSequence(_))));
    }

    #[test]
    fn catalog_contains_standard_sequences() {
        let cat = ses_catalog(&[2], 2);
        assert!(cat.iter().any(|s| s.label == "Z -> R -> T"));
        assert!(cat.iter().any(|s| s.c == Operand::Cover(CoverExpr::Xi(2))));
        assert!(cat.iter().any(|s| s.b == q(Atom::Cyclic(2, 2))));
    }
}
