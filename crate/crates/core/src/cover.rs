//! Quotients of a locally compact group by a non-closed or opaque subgroup,
//! and the operand type that mixes them with plain expressions.

use std::fmt;

use crate::expr::{Atom, GroupExpr};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CoverExpr {
    /// A quotient that turned out to be an honest group.
    Split(GroupExpr),
    /// `ambient / H` with `H` free of rank `kernel_rank`, not closed.
    DenseFree { ambient: GroupExpr, kernel_rank: u32 },
    /// `(Z/pZ)^ω / (Z/pZ)^(ω)`.
    Xi(u64),
    /// `ambient / kernel` for a closed embedding with no catalog normal form.
    TaggedCoker { ambient: GroupExpr, kernel: GroupExpr, note: String },
}

impl CoverExpr {
    /// Ambient group and subgroup, when both are catalog expressions.
    pub fn presentation(&self) -> (GroupExpr, GroupExpr) {
        match self {
            CoverExpr::Split(g) => (g.clone(), GroupExpr::zero()),
            CoverExpr::DenseFree { ambient, kernel_rank } => {
                (ambient.clone(), GroupExpr::atom(Atom::Int).power(*kernel_rank as usize))
            }
            CoverExpr::Xi(p) => (Atom::OmegaProd(*p).into(), Atom::OmegaSum(*p).into()),
            CoverExpr::TaggedCoker { ambient, kernel, .. } => (ambient.clone(), kernel.clone()),
        }
    }

    pub fn ascii(&self) -> String {
        match self {
            CoverExpr::Split(g) => g.ascii(),
            CoverExpr::DenseFree { ambient, kernel_rank } => {
                format!("{}/<dense free rank {kernel_rank}>", ambient.ascii())
            }
            CoverExpr::Xi(p) => format!("Xi({p})"),
            CoverExpr::TaggedCoker { ambient, kernel, .. } => {
                format!("{}/{}", ambient.ascii(), kernel.ascii())
            }
        }
    }

    pub fn unicode(&self) -> String {
        match self {
            CoverExpr::Split(g) => g.unicode(),
            CoverExpr::DenseFree { ambient, kernel_rank } => {
                format!("{}/⟨dense free rank {kernel_rank}⟩", ambient.unicode())
            }
            CoverExpr::Xi(p) => format!("Ξ_{p}"),
            CoverExpr::TaggedCoker { ambient, kernel, note } => {
                format!("{}/{} [{note}]", ambient.unicode(), kernel.unicode())
            }
        }
    }
}

/// Argument of a Hom/Ext query.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Operand {
    Expr(GroupExpr),
    Cover(CoverExpr),
}

impl Operand {
    /// Collapses `Split` covers to their expression.
    pub fn normalized(self) -> Operand {
        match self {
            Operand::Cover(CoverExpr::Split(g)) => Operand::Expr(g),
            other => other,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Operand::Expr(g) if g.is_zero())
    }

    pub fn as_expr(&self) -> Option<&GroupExpr> {
        match self {
            Operand::Expr(g) => Some(g),
            Operand::Cover(CoverExpr::Split(g)) => Some(g),
            Operand::Cover(_) => None,
        }
    }

    pub fn ascii(&self) -> String {
        match self {
            Operand::Expr(g) => g.ascii(),
            Operand::Cover(c) => c.ascii(),
        }
    }

    pub fn unicode(&self) -> String {
        match self {
            Operand::Expr(g) => g.unicode(),
            Operand::Cover(c) => c.unicode(),
        }
    }
}

impl From<GroupExpr> for Operand {
    fn from(g: GroupExpr) -> Self {
        Operand::Expr(g)
    }
}

impl From<Atom> for Operand {
    fn from(a: Atom) -> Self {
        Operand::Expr(a.into())
    }
}

impl From<CoverExpr> for Operand {
    fn from(c: CoverExpr) -> Self {
        Operand::Cover(c).normalized()
    }
}

impl fmt::Display for CoverExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.unicode())
    }
}

impl fmt::Display for Operand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.unicode())
    }
}
