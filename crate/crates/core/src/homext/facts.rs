//! The seeded fact base: a tab-separated table of Hom/Ext identities over
//! single-summand patterns with prime and exponent variables.

use std::collections::BTreeSet;
use std::path::Path;

use thiserror::Error;

use super::value::{Citation, Functor, Provenance, Term};
use crate::cover::{CoverExpr, Operand};
use crate::expr::{factorize, is_prime, Atom, GroupExpr};

const DEFAULT_FACTS: &str = include_str!("../../data/facts.tsv");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactError {
    #[error("fact table line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("cannot read fact table {path}: {message}")]
    Io { path: String, message: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Real,
    Circle,
    OmegaTorus,
    Solenoid,
    Int,
    Rat,
    PadicInt,
    PadicRat,
    OmegaProd,
    Cyclic,
    Prufer,
    OmegaSum,
    Xi,
    Zero,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Param {
    Var(char),
    Lit(u64),
}

type Bindings = Vec<(char, u64)>;

fn bind(b: &mut Bindings, param: Param, value: u64) -> bool {
    match param {
        Param::Lit(x) => x == value,
        Param::Var(v) => match b.iter().find(|(name, _)| *name == v) {
            Some(&(_, bound)) => bound == value,
            None => {
                b.push((v, value));
                true
            }
        },
    }
}

fn lookup(b: &Bindings, param: Param) -> Option<u64> {
    match param {
        Param::Lit(x) => Some(x),
        Param::Var(v) => b.iter().find(|(name, _)| *name == v).map(|&(_, x)| x),
    }
}

/// A single summand with optional variable prime and exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermPattern {
    kind: Kind,
    prime: Option<Param>,
    exp: Option<Param>,
    text: String,
}

impl TermPattern {
    pub fn parse(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let (name, arg) = match s.find('(') {
            Some(i) if s.ends_with(')') => (&s[..i], Some(&s[i + 1..s.len() - 1])),
            Some(_) => return Err(format!("unbalanced parenthesis in {s:?}")),
            None => (s, None),
        };
        let kind = match name {
            "R" => Kind::Real,
            "T" => Kind::Circle,
            "T^w" => Kind::OmegaTorus,
            "Sol" => Kind::Solenoid,
            "Z" => Kind::Int,
            "Q" => Kind::Rat,
            "Zp" => Kind::PadicInt,
            "Qp" => Kind::PadicRat,
            "PC" => Kind::OmegaProd,
            "C" => Kind::Cyclic,
            "Pr" => Kind::Prufer,
            "SC" => Kind::OmegaSum,
            "Xi" => Kind::Xi,
            "0" => Kind::Zero,
            other => return Err(format!("unknown atom {other:?}")),
        };
        let needs_arg = !matches!(
            kind,
            Kind::Real | Kind::Circle | Kind::OmegaTorus | Kind::Solenoid | Kind::Int | Kind::Rat | Kind::Zero
        );
        let (prime, exp) = match (needs_arg, arg) {
            (false, None) => (None, None),
            (false, Some(_)) => return Err(format!("{name} takes no argument")),
            (true, None) => return Err(format!("{name} needs an argument")),
            (true, Some(arg)) => {
                let (base, power) = match arg.split_once('^') {
                    Some((b, e)) => (b.trim(), Some(e.trim())),
                    None => (arg.trim(), None),
                };
                let param = |t: &str| -> Result<Param, String> {
                    if let Ok(n) = t.parse::<u64>() {
                        Ok(Param::Lit(n))
                    } else if t.len() == 1 && t.chars().all(|c| c.is_ascii_lowercase()) {
                        Ok(Param::Var(t.chars().next().expect("one char")))
                    } else {
                        Err(format!("bad parameter {t:?}"))
                    }
                };
                let base = param(base)?;
                if kind == Kind::Cyclic {
                    match (base, power) {
                        (Param::Lit(n), None) => match factorize(n).as_slice() {
                            [(p, e)] => (Some(Param::Lit(*p)), Some(Param::Lit(u64::from(*e)))),
                            _ => return Err(format!("C({n}) is not a prime power")),
                        },
                        (b, None) => (Some(b), Some(Param::Lit(1))),
                        (b, Some(e)) => (Some(b), Some(param(e)?)),
                    }
                } else {
                    if power.is_some() {
                        return Err(format!("{name} takes a prime, not a power"));
                    }
                    (Some(base), None)
                }
            }
        };
        if let Some(Param::Lit(p)) = prime {
            if !is_prime(p) {
                return Err(format!("{p} is not prime"));
            }
        }
        Ok(TermPattern { kind, prime, exp, text: s.to_string() })
    }

    fn vars(&self) -> impl Iterator<Item = char> + '_ {
        [self.prime, self.exp].into_iter().flatten().filter_map(|p| match p {
            Param::Var(v) => Some(v),
            Param::Lit(_) => None,
        })
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    fn matches(&self, t: &Term, b: &mut Bindings) -> bool {
        let with_prime = |b: &mut Bindings, p: u64| self.prime.is_some_and(|param| bind(b, param, p));
        match (self.kind, t) {
            (Kind::Real, Term::Atom(Atom::Real))
            | (Kind::Circle, Term::Atom(Atom::Circle))
            | (Kind::OmegaTorus, Term::Atom(Atom::OmegaTorus))
            | (Kind::Solenoid, Term::Atom(Atom::Solenoid))
            | (Kind::Int, Term::Atom(Atom::Int))
            | (Kind::Rat, Term::Atom(Atom::Rat)) => true,
            (Kind::PadicInt, Term::Atom(Atom::PadicInt(p)))
            | (Kind::PadicRat, Term::Atom(Atom::PadicRat(p)))
            | (Kind::OmegaProd, Term::Atom(Atom::OmegaProd(p)))
            | (Kind::Prufer, Term::Atom(Atom::Prufer(p)))
            | (Kind::OmegaSum, Term::Atom(Atom::OmegaSum(p)))
            | (Kind::Xi, Term::Cover(CoverExpr::Xi(p))) => with_prime(b, *p),
            (Kind::Cyclic, Term::Atom(Atom::Cyclic(p, k))) => {
                with_prime(b, *p) && self.exp.is_some_and(|e| bind(b, e, u64::from(*k)))
            }
            _ => false,
        }
    }

    fn instantiate(&self, b: &Bindings) -> Option<Operand> {
        let p = self.prime.map(|x| lookup(b, x));
        let prime = || p.flatten();
        let atom = match self.kind {
            Kind::Zero => return Some(Operand::Expr(GroupExpr::zero())),
            Kind::Xi => return Some(Operand::Cover(CoverExpr::Xi(prime()?))),
            Kind::Real => Atom::Real,
            Kind::Circle => Atom::Circle,
            Kind::OmegaTorus => Atom::OmegaTorus,
            Kind::Solenoid => Atom::Solenoid,
            Kind::Int => Atom::Int,
            Kind::Rat => Atom::Rat,
            Kind::PadicInt => Atom::PadicInt(prime()?),
            Kind::PadicRat => Atom::PadicRat(prime()?),
            Kind::OmegaProd => Atom::OmegaProd(prime()?),
            Kind::Prufer => Atom::Prufer(prime()?),
            Kind::OmegaSum => Atom::OmegaSum(prime()?),
            Kind::Cyclic => Atom::Cyclic(prime()?, u32::try_from(lookup(b, self.exp?)?).ok()?),
        };
        atom.validate().ok().map(Operand::from)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactKind {
    Hom,
    Ext,
    /// Cokernel of `Hom(B, X) → Hom(A, X)`.
    CokerHom,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fact {
    pub kind: FactKind,
    /// Source pattern; for `CokerHom` this is `B`.
    pub lhs: TermPattern,
    /// `A` of a `CokerHom` row.
    pub lhs_to: Option<TermPattern>,
    pub rhs: TermPattern,
    pub value: TermPattern,
    pub citation: Citation,
    pub line: usize,
}

impl Fact {
    fn vars(&self) -> BTreeSet<char> {
        self.lhs.vars().chain(self.lhs_to.iter().flat_map(|t| t.vars())).chain(self.rhs.vars()).collect()
    }

    pub fn functor(&self) -> Option<Functor> {
        match self.kind {
            FactKind::Hom => Some(Functor::Hom),
            FactKind::Ext => Some(Functor::Ext),
            FactKind::CokerHom => None,
        }
    }

    pub fn describe(&self) -> String {
        match self.kind {
            FactKind::CokerHom => format!(
                "coker(Hom({}, {x}) -> Hom({}, {x})) = {}",
                self.lhs.text,
                self.lhs_to.as_ref().map_or("", |t| t.text()),
                self.value.text,
                x = self.rhs.text
            ),
            _ => format!(
                "{}({}, {}) = {}",
                self.functor().expect("hom or ext"),
                self.lhs.text,
                self.rhs.text,
                self.value.text
            ),
        }
    }

    /// Instances with variables ranging over the given primes and exponents:
    /// `(lhs, lhs_to, rhs, value)`.
    pub fn instances(&self, primes: &[u64], exps: &[u32]) -> Vec<(Term, Option<Term>, Term, Operand)> {
        let vars: Vec<char> = self.vars().into_iter().collect();
        let mut bindings: Vec<Bindings> = vec![Vec::new()];
        for v in vars {
            let range: Vec<u64> = if v == 'k' || v == 'j' {
                exps.iter().map(|&e| u64::from(e)).collect()
            } else {
                primes.to_vec()
            };
            bindings = bindings
                .into_iter()
                .flat_map(|b| {
                    range.iter().map(move |&x| {
                        let mut b = b.clone();
                        b.push((v, x));
                        b
                    })
                })
                .collect();
        }
        let single = |op: Operand| -> Option<Term> {
            let terms = Term::split(&op);
            (terms.len() == 1).then(|| terms.into_iter().next().expect("one term"))
        };
        bindings
            .iter()
            .filter_map(|b| {
                let lhs = single(self.lhs.instantiate(b)?)?;
                let lhs_to = match &self.lhs_to {
                    Some(t) => Some(single(t.instantiate(b)?)?),
                    None => None,
                };
                let rhs = single(self.rhs.instantiate(b)?)?;
                Some((lhs, lhs_to, rhs, self.value.instantiate(b)?))
            })
            .collect()
    }
}

#[derive(Clone, Debug, Default)]
pub struct FactBase {
    facts: Vec<Fact>,
}

impl FactBase {
    pub fn builtin() -> FactBase {
        FactBase::parse(DEFAULT_FACTS).expect("shipped fact table parses")
    }

    pub fn empty() -> FactBase {
        FactBase::default()
    }

    pub fn load(path: &Path) -> Result<FactBase, FactError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| FactError::Io { path: path.display().to_string(), message: e.to_string() })?;
        FactBase::parse(&text)
    }

    pub fn parse(text: &str) -> Result<FactBase, FactError> {
        let mut facts = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let err = |message: String| FactError::Syntax { line, message };
            if raw.trim().is_empty() || raw.trim_start().starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = raw.split('\t').collect();
            if cols.len() != 6 {
                return Err(err(format!("expected 6 tab-separated columns, found {}", cols.len())));
            }
            let kind = match cols[0].trim() {
                "Hom" => FactKind::Hom,
                "Ext" => FactKind::Ext,
                "CokerHom" => FactKind::CokerHom,
                other => return Err(err(format!("unknown functor {other:?}"))),
            };
            let (lhs, lhs_to) = if kind == FactKind::CokerHom {
                let (b, a) = cols[1].split_once("->").ok_or_else(|| err("CokerHom LHS must read B->A".into()))?;
                (TermPattern::parse(b).map_err(err)?, Some(TermPattern::parse(a).map_err(err)?))
            } else {
                (TermPattern::parse(cols[1]).map_err(err)?, None)
            };
            let rhs = TermPattern::parse(cols[2]).map_err(err)?;
            let value = TermPattern::parse(cols[3]).map_err(err)?;
            let provenance: Provenance = cols[4].trim().parse().map_err(err)?;
            let id = cols[5].split_whitespace().next().ok_or_else(|| err("missing citation".into()))?;
            let fact = Fact {
                kind,
                lhs,
                lhs_to,
                rhs,
                value,
                citation: Citation { id: id.to_string(), provenance },
                line,
            };
            let bound = fact.vars();
            if let Some(v) = fact.value.vars().find(|v| !bound.contains(v)) {
                return Err(err(format!("value uses unbound variable {v}")));
            }
            if facts.iter().any(|f: &Fact| f.citation.id == fact.citation.id) {
                return Err(err(format!("duplicate fact id {}", fact.citation.id)));
            }
            facts.push(fact);
        }
        Ok(FactBase { facts })
    }

    pub fn facts(&self) -> &[Fact] {
        &self.facts
    }

    pub fn len(&self) -> usize {
        self.facts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facts.is_empty()
    }

    pub fn contains_id(&self, id: &str) -> bool {
        self.facts.iter().any(|f| f.citation.id == id)
    }

    /// First fact matching `F(a, b)`.
    pub fn lookup(&self, f: Functor, a: &Term, b: &Term) -> Option<(Operand, &Fact)> {
        self.facts.iter().filter(|fact| fact.functor() == Some(f)).find_map(|fact| {
            let mut bind = Bindings::new();
            if fact.lhs.matches(a, &mut bind) && fact.rhs.matches(b, &mut bind) {
                fact.value.instantiate(&bind).map(|v| (v, fact))
            } else {
                None
            }
        })
    }

    /// Cokernel of `Hom(from, x) → Hom(to, x)`.
    pub fn coker(&self, from: &Term, to: &Term, x: &Term) -> Option<(Operand, &Fact)> {
        self.facts.iter().filter(|fact| fact.kind == FactKind::CokerHom).find_map(|fact| {
            let mut bind = Bindings::new();
            let to_pat = fact.lhs_to.as_ref()?;
            if fact.lhs.matches(from, &mut bind) && to_pat.matches(to, &mut bind) && fact.rhs.matches(x, &mut bind) {
                fact.value.instantiate(&bind).map(|v| (v, fact))
            } else {
                None
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_parses() {
        let fb = FactBase::builtin();
        assert!(fb.len() >= 25);
        assert!(fb.contains_id("EXT-PRUFER-1"));
    }

    #[test]
    fn lookup_binds_variables() {
        let fb = FactBase::builtin();
        let (v, fact) = fb.lookup(Functor::Ext, &Term::Atom(Atom::Prufer(3)), &Term::Atom(Atom::PadicInt(3))).unwrap();
        assert_eq!(v.ascii(), "Zp(3)");
        assert_eq!(fact.citation.id, "EXT-PRUFER-1");
        assert!(fb.lookup(Functor::Ext, &Term::Atom(Atom::Prufer(3)), &Term::Atom(Atom::PadicInt(2))).is_none());
        let (v, _) = fb.lookup(Functor::Ext, &Term::Atom(Atom::Circle), &Term::Atom(Atom::Cyclic(5, 2))).unwrap();
        assert_eq!(v.ascii(), "C(25)");
    }

    #[test]
    fn coker_lookup() {
        let fb = FactBase::builtin();
        let (v, fact) = fb
            .coker(&Term::Atom(Atom::OmegaProd(2)), &Term::Atom(Atom::OmegaSum(2)), &Term::Atom(Atom::Circle))
            .unwrap();
        assert_eq!(v.ascii(), "Xi(2)");
        assert_eq!(fact.citation.provenance, Provenance::Paper);
    }

    #[test]
    fn rejects_malformed_rows() {
        assert!(FactBase::parse("Ext\tPr(p)\tZ\n").is_err());
        assert!(FactBase::parse("Ext\tPr(p)\tZ\tZp(q)\tPAPER\tX-1\n").is_err());
        assert!(FactBase::parse("Ext\tPr(4)\tZ\t0\tPAPER\tX-1\n").is_err());
        assert!(FactBase::parse("Ext\tFoo\tZ\t0\tPAPER\tX-1\n").is_err());
        assert!(FactBase::parse("Ext\tT\tZ\tZ\tGUESS\tX-1\n").is_err());
    }

    #[test]
    fn instances_enumerate_bindings() {
        let fb = FactBase::builtin();
        let fact = fb.facts().iter().find(|f| f.citation.id == "EXT-T-LAMBDA-3").unwrap();
        assert_eq!(fact.instances(&[2, 3], &[1, 2]).len(), 4);
    }
}
