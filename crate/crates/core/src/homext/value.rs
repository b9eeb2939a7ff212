//! Query results, traces and citations.

use std::fmt;
use std::str::FromStr;

use crate::cover::{CoverExpr, Operand};
use crate::duality::dual_atom;
use crate::expr::{Atom, GroupExpr};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Functor {
    Hom,
    Ext,
}

impl fmt::Display for Functor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Functor::Hom => "Hom",
            Functor::Ext => "Ext",
        })
    }
}

impl FromStr for Functor {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Hom" | "hom" => Ok(Functor::Hom),
            "Ext" | "ext" => Ok(Functor::Ext),
            other => Err(format!("unknown functor {other:?}")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Provenance {
    Paper,
    Derived,
    Trivial,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Paper => "PAPER",
            Provenance::Derived => "DERIVED",
            Provenance::Trivial => "TRIVIAL",
        })
    }
}

impl FromStr for Provenance {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "PAPER" => Ok(Provenance::Paper),
            "DERIVED" => Ok(Provenance::Derived),
            "TRIVIAL" => Ok(Provenance::Trivial),
            other => Err(format!("unknown provenance {other:?}")),
        }
    }
}

/// Reference to a fact-base entry.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Citation {
    pub id: String,
    pub provenance: Provenance,
}

impl fmt::Display for Citation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]", self.id, self.provenance)
    }
}

/// One summand of an operand.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Atom(Atom),
    Cover(CoverExpr),
}

impl Term {
    pub fn split(op: &Operand) -> Vec<Term> {
        match op.clone().normalized() {
            Operand::Expr(g) => g.atoms().iter().map(|&a| Term::Atom(a)).collect(),
            Operand::Cover(c) => vec![Term::Cover(c)],
        }
    }

    pub fn atom(&self) -> Option<Atom> {
        match self {
            Term::Atom(a) => Some(*a),
            Term::Cover(_) => None,
        }
    }

    pub fn dual(&self) -> Option<Term> {
        match self {
            Term::Atom(a) => dual_atom(*a).ok().map(Term::Atom),
            Term::Cover(_) => None,
        }
    }

    pub fn to_operand(&self) -> Operand {
        match self {
            Term::Atom(a) => Operand::Expr((*a).into()),
            Term::Cover(c) => Operand::Cover(c.clone()),
        }
    }

    pub fn ascii(&self) -> String {
        match self {
            Term::Atom(a) => a.ascii(),
            Term::Cover(c) => c.ascii(),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ascii())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum HomExtValue {
    Expr(GroupExpr),
    Cover(CoverExpr),
    Unresolved { reason: String, rule_trace: Vec<String> },
}

impl HomExtValue {
    pub fn zero() -> Self {
        HomExtValue::Expr(GroupExpr::zero())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, HomExtValue::Expr(g) if g.is_zero())
    }

    pub fn is_resolved(&self) -> bool {
        !matches!(self, HomExtValue::Unresolved { .. })
    }

    pub fn operand(&self) -> Option<Operand> {
        match self {
            HomExtValue::Expr(g) => Some(Operand::Expr(g.clone())),
            HomExtValue::Cover(c) => Some(Operand::Cover(c.clone())),
            HomExtValue::Unresolved { .. } => None,
        }
    }

    pub fn as_expr(&self) -> Option<&GroupExpr> {
        match self {
            HomExtValue::Expr(g) => Some(g),
            _ => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            HomExtValue::Expr(_) => "expr",
            HomExtValue::Cover(_) => "cover",
            HomExtValue::Unresolved { .. } => "unresolved",
        }
    }

    pub fn ascii(&self) -> String {
        match self {
            HomExtValue::Expr(g) => g.ascii(),
            HomExtValue::Cover(c) => c.ascii(),
            HomExtValue::Unresolved { reason, .. } => format!("unresolved: {reason}"),
        }
    }

    pub fn unicode(&self) -> String {
        match self {
            HomExtValue::Expr(g) => g.unicode(),
            HomExtValue::Cover(c) => c.unicode(),
            HomExtValue::Unresolved { reason, .. } => format!("unresolved: {reason}"),
        }
    }
}

impl From<Operand> for HomExtValue {
    fn from(op: Operand) -> Self {
        match op.normalized() {
            Operand::Expr(g) => HomExtValue::Expr(g),
            Operand::Cover(c) => HomExtValue::Cover(c),
        }
    }
}

impl fmt::Display for HomExtValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.unicode())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TraceStep {
    pub rule: String,
    /// The summand pair, e.g. `Ext(Pr(2), Zp(2))`.
    pub pair: String,
    pub detail: String,
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} ({})", self.rule, self.pair, self.detail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Answer {
    pub value: HomExtValue,
    pub trace: Vec<TraceStep>,
    pub citations: Vec<Citation>,
}

pub(crate) fn pair_label(f: Functor, a: &Term, b: &Term) -> String {
    format!("{f}({}, {})", a.ascii(), b.ascii())
}
