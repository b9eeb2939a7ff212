//! Category tags, membership, and the injective/projective decision tables.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::props::properties;
use crate::cover::{CoverExpr, Operand};
use crate::expr::{is_prime, Atom, GroupExpr};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BaseCategory {
    Lcpab,
    LcpabCg,
    LieAb,
    Tdlcpab,
    TorLcpab,
    LcpabP(u64),
    Flcpab,
    FlcpabP(u64),
    TorFlcpab,
    LcpabA,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CategoryTag {
    pub base: BaseCategory,
    pub heart: bool,
}

impl CategoryTag {
    pub fn base(base: BaseCategory) -> Self {
        CategoryTag { base, heart: false }
    }

    pub fn heart(base: BaseCategory) -> Self {
        CategoryTag { base, heart: true }
    }
}

impl BaseCategory {
    /// The seven categories whose left heart has no nonzero injectives.
    pub fn heart_has_no_injectives(self) -> bool {
        matches!(
            self,
            BaseCategory::Lcpab
                | BaseCategory::LcpabCg
                | BaseCategory::Flcpab
                | BaseCategory::LieAb
                | BaseCategory::Tdlcpab
                | BaseCategory::TorLcpab
                | BaseCategory::LcpabP(_)
        )
    }

    /// Already abelian, so the left heart is the category itself.
    pub fn is_abelian(self) -> bool {
        matches!(self, BaseCategory::FlcpabP(_) | BaseCategory::TorFlcpab)
    }

    pub fn all(primes: &[u64]) -> Vec<BaseCategory> {
        let mut out = vec![
            BaseCategory::Lcpab,
            BaseCategory::LcpabCg,
            BaseCategory::LieAb,
            BaseCategory::Tdlcpab,
            BaseCategory::TorLcpab,
            BaseCategory::Flcpab,
            BaseCategory::TorFlcpab,
            BaseCategory::LcpabA,
        ];
        for &p in primes {
            out.push(BaseCategory::LcpabP(p));
            out.push(BaseCategory::FlcpabP(p));
        }
        out
    }
}

impl fmt::Display for BaseCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseCategory::Lcpab => f.write_str("LCPAb"),
            BaseCategory::LcpabCg => f.write_str("LCPAb_cg"),
            BaseCategory::LieAb => f.write_str("LieAb"),
            BaseCategory::Tdlcpab => f.write_str("TDLCPAb"),
            BaseCategory::TorLcpab => f.write_str("TorLCPAb"),
            BaseCategory::LcpabP(p) => write!(f, "LCPAb_p({p})"),
            BaseCategory::Flcpab => f.write_str("FLCPAb"),
            BaseCategory::FlcpabP(p) => write!(f, "FLCPAb_p({p})"),
            BaseCategory::TorFlcpab => f.write_str("TorFLCPAb"),
            BaseCategory::LcpabA => f.write_str("LCPAb_A"),
        }
    }
}

impl fmt::Display for CategoryTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.heart {
            write!(f, "LH({})", self.base)
        } else {
            write!(f, "{}", self.base)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown category `{0}`")]
pub struct UnknownCategory(pub String);

fn parse_prime_arg(s: &str, name: &str) -> Option<u64> {
    let inner = s.strip_prefix(name)?.strip_prefix('(')?.strip_suffix(')')?;
    let p: u64 = inner.trim().parse().ok()?;
    is_prime(p).then_some(p)
}

impl FromStr for BaseCategory {
    type Err = UnknownCategory;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        Ok(match s {
            "LCPAb" => BaseCategory::Lcpab,
            "LCPAb_cg" => BaseCategory::LcpabCg,
            "LieAb" => BaseCategory::LieAb,
            "TDLCPAb" => BaseCategory::Tdlcpab,
            "TorLCPAb" => BaseCategory::TorLcpab,
            "FLCPAb" => BaseCategory::Flcpab,
            "TorFLCPAb" => BaseCategory::TorFlcpab,
            "LCPAb_A" => BaseCategory::LcpabA,
            _ => {
                if let Some(p) = parse_prime_arg(s, "LCPAb_p").or_else(|| parse_prime_arg(s, "LCPAb")) {
                    BaseCategory::LcpabP(p)
                } else if let Some(p) =
                    parse_prime_arg(s, "FLCPAb_p").or_else(|| parse_prime_arg(s, "FLCPAb"))
                {
                    BaseCategory::FlcpabP(p)
                } else {
                    return Err(UnknownCategory(s.to_string()));
                }
            }
        })
    }
}

impl FromStr for CategoryTag {
    type Err = UnknownCategory;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix("LH(").and_then(|r| r.strip_suffix(')')) {
            if inner.trim_start().starts_with("LH(") {
                return Err(UnknownCategory(s.to_string()));
            }
            return inner.parse().map(CategoryTag::heart).map_err(|_| UnknownCategory(s.to_string()));
        }
        s.parse().map(CategoryTag::base)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("{object} is not an object of {category}")]
    NotAMember { object: String, category: String },
    #[error("no classification is available for {0}")]
    Unsupported(String),
    #[error("no essentially injective resolution is available for {0}")]
    ResolutionUnsupported(String),
    #[error("rank overflow: {0}")]
    RankOverflow(String),
}

/// Decision with a short justification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub reason: String,
}

impl Verdict {
    fn new(holds: bool, reason: impl Into<String>) -> Self {
        Verdict { holds, reason: reason.into() }
    }
}

pub fn member(g: &GroupExpr, cat: BaseCategory) -> bool {
    let v = properties(g);
    match cat {
        BaseCategory::Lcpab => true,
        BaseCategory::LcpabCg => v.compactly_generated,
        BaseCategory::LieAb => v.lie,
        BaseCategory::Tdlcpab => v.totally_disconnected,
        BaseCategory::TorLcpab => v.topological_torsion,
        BaseCategory::LcpabP(p) => v.is_topological_p_group(p),
        BaseCategory::Flcpab => v.finite_ranks,
        BaseCategory::FlcpabP(p) => v.is_topological_p_group(p) && v.finite_ranks,
        BaseCategory::TorFlcpab => v.topological_torsion && v.finite_ranks,
        BaseCategory::LcpabA => v.type_a,
    }
}

/// A cover `G/H` is an object of the left heart when both `G` and `H` lie in the category.
pub fn cover_member(c: &CoverExpr, cat: BaseCategory) -> bool {
    let (ambient, kernel) = c.presentation();
    member(&ambient, cat) && member(&kernel, cat)
}

fn not_member(obj: &Operand, cat: CategoryTag) -> ClassifyError {
    ClassifyError::NotAMember { object: obj.ascii(), category: cat.to_string() }
}

/// Resolves the operand to a group of the base category, or reports why the
/// heart-only path applies.
enum Subject {
    Group(GroupExpr),
    Quotient,
}

fn subject(obj: &Operand, cat: CategoryTag) -> Result<Subject, ClassifyError> {
    match obj {
        Operand::Expr(g) | Operand::Cover(CoverExpr::Split(g)) => {
            if member(g, cat.base) {
                Ok(Subject::Group(g.clone()))
            } else {
                Err(not_member(obj, cat))
            }
        }
        Operand::Cover(c) => {
            if cat.heart && cover_member(c, cat.base) {
                Ok(Subject::Quotient)
            } else {
                Err(not_member(obj, cat))
            }
        }
    }
}

fn atoms_within(g: &GroupExpr, allowed: impl Fn(Atom) -> bool) -> bool {
    g.all(allowed)
}

pub fn classify_injective(obj: &Operand, cat: CategoryTag) -> Result<Verdict, ClassifyError> {
    let subj = subject(obj, cat)?;
    if cat.heart && cat.base == BaseCategory::LcpabA {
        return Err(ClassifyError::Unsupported(cat.to_string()));
    }
    if cat.heart && cat.base.heart_has_no_injectives() {
        let zero = matches!(&subj, Subject::Group(g) if g.is_zero());
        return Ok(Verdict::new(zero, format!("only the zero object is injective in {cat}")));
    }
    let g = match subj {
        Subject::Group(g) => g,
        Subject::Quotient => return Err(not_member(obj, cat)),
    };
    let v = properties(&g);
    Ok(match cat.base {
        BaseCategory::Lcpab | BaseCategory::LcpabCg | BaseCategory::LieAb | BaseCategory::Flcpab => {
            let ok = atoms_within(&g, |a| matches!(a, Atom::Real | Atom::Circle | Atom::OmegaTorus));
            Verdict::new(ok, if ok { "V⊕T form" } else { "not a vector group plus a torus" })
        }
        BaseCategory::Tdlcpab | BaseCategory::TorLcpab => {
            let ok = v.countable && v.divisible;
            Verdict::new(ok, if ok { "countable and divisible" } else { "not countable and divisible" })
        }
        BaseCategory::LcpabP(p) => {
            let ok = v.countable && v.divisible && v.is_topological_p_group(p);
            Verdict::new(
                ok,
                if ok { "countable divisible p-group" } else { "not a countable divisible p-group" },
            )
        }
        BaseCategory::FlcpabP(_) | BaseCategory::TorFlcpab => {
            let ok = v.divisible;
            Verdict::new(ok, if ok { "divisible" } else { "not divisible" })
        }
        BaseCategory::LcpabA => {
            let t = g.filter(Atom::is_topological_torsion);
            let pt = properties(&t);
            let ok = pt.countable && pt.divisible;
            Verdict::new(
                ok,
                if ok {
                    "vector part plus countable divisible torsion part"
                } else {
                    "torsion part is not countable and divisible"
                },
            )
        }
    })
}

pub fn classify_projective(obj: &Operand, cat: CategoryTag) -> Result<Verdict, ClassifyError> {
    let subj = subject(obj, cat)?;
    let g = match subj {
        Subject::Group(g) => g,
        Subject::Quotient => {
            return Ok(Verdict::new(false, format!("a non-split quotient is not an object of {}", cat.base)))
        }
    };
    let (ok, shape) = match cat.base {
        BaseCategory::Lcpab | BaseCategory::LcpabCg | BaseCategory::LieAb => {
            (atoms_within(&g, |a| matches!(a, Atom::Real | Atom::Int)), "V⊕F form")
        }
        BaseCategory::Tdlcpab => (atoms_within(&g, |a| a == Atom::Int), "countable free"),
        BaseCategory::TorLcpab => (
            atoms_within(&g, |a| matches!(a, Atom::PadicInt(_))),
            "codivisible compact topological torsion",
        ),
        BaseCategory::LcpabP(p) => {
            (atoms_within(&g, |a| a == Atom::PadicInt(p)), "codivisible compact p-group")
        }
        BaseCategory::FlcpabP(p) => (
            atoms_within(&g, |a| a == Atom::PadicInt(p) || a == Atom::PadicRat(p)),
            "codivisible finite p-rank p-group",
        ),
        BaseCategory::TorFlcpab => (
            atoms_within(&g, |a| matches!(a, Atom::PadicInt(_) | Atom::PadicRat(_))),
            "codivisible finite-rank topological torsion",
        ),
        BaseCategory::Flcpab | BaseCategory::LcpabA => {
            return Err(ClassifyError::Unsupported(cat.to_string()))
        }
    };
    Ok(Verdict::new(ok, if ok { shape.to_string() } else { format!("not of {shape} shape") }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(atoms: &[Atom]) -> Operand {
        Operand::Expr(GroupExpr::from_atoms(atoms.iter().copied()).unwrap())
    }

    fn tag(s: &str) -> CategoryTag {
        s.parse().unwrap()
    }

    #[test]
    fn parse_tags() {
        assert_eq!(tag("LH(TDLCPAb)"), CategoryTag::heart(BaseCategory::Tdlcpab));
        assert_eq!(tag("LCPAb_p(3)"), CategoryTag::base(BaseCategory::LcpabP(3)));
        assert_eq!(tag("FLCPAb(5)"), CategoryTag::base(BaseCategory::FlcpabP(5)));
        assert!("LH(LH(LCPAb))".parse::<CategoryTag>().is_err());
        assert!("LCPAb_p(4)".parse::<CategoryTag>().is_err());
        assert!("Banach".parse::<CategoryTag>().is_err());
        for c in BaseCategory::all(&[2, 7]) {
            assert_eq!(c.to_string().parse::<BaseCategory>().unwrap(), c);
        }
    }

    #[test]
    fn membership_examples() {
        let x = GroupExpr::from_atoms([Atom::PadicInt(2), Atom::Cyclic(2, 1)]).unwrap();
        assert!(member(&x, BaseCategory::FlcpabP(2)));
        assert!(!member(&Atom::Real.into(), BaseCategory::Tdlcpab));
        assert!(!member(&Atom::Rat.into(), BaseCategory::LcpabA));
        assert!(!member(&Atom::OmegaProd(2).into(), BaseCategory::Flcpab));
    }

    #[test]
    fn injective_examples() {
        let lc = tag("LCPAb");
        assert!(classify_injective(&g(&[Atom::Real, Atom::Circle]), lc).unwrap().holds);
        assert!(classify_injective(&g(&[Atom::Prufer(3), Atom::Rat]), tag("TDLCPAb")).unwrap().holds);
        assert!(!classify_injective(&g(&[Atom::Prufer(3)]), tag("LH(TDLCPAb)")).unwrap().holds);
        assert!(
            classify_injective(&g(&[Atom::PadicRat(5), Atom::Prufer(5)]), tag("TorFLCPAb")).unwrap().holds
        );
        assert!(matches!(
            classify_injective(&g(&[Atom::Real]), tag("TDLCPAb")),
            Err(ClassifyError::NotAMember { .. })
        ));
        assert!(classify_injective(&Operand::Cover(CoverExpr::Xi(2)), tag("TDLCPAb")).is_err());
        assert!(!classify_injective(&Operand::Cover(CoverExpr::Xi(2)), tag("LH(TDLCPAb)")).unwrap().holds);
    }

    #[test]
    fn projective_examples() {
        assert!(classify_projective(&g(&[Atom::Real, Atom::Int, Atom::Int]), tag("LH(LCPAb)")).unwrap().holds);
        assert!(classify_projective(&g(&[Atom::Int, Atom::Int]), tag("LH(TDLCPAb)")).unwrap().holds);
        assert!(classify_projective(&g(&[Atom::PadicInt(2)]), tag("LH(TorLCPAb)")).unwrap().holds);
        assert!(!classify_projective(&g(&[Atom::Circle]), tag("LCPAb")).unwrap().holds);
        let split = Operand::Cover(CoverExpr::Split(GroupExpr::atom(Atom::Int)));
        assert!(classify_projective(&split, tag("LH(TDLCPAb)")).unwrap().holds);
    }
}
