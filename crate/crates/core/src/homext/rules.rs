//! Hom and Ext rules as named strategy objects, held in a registry that
//! fixes their priority and lets callers switch individual rules off.

use std::fmt;

use super::engine::{Engine, Goal, QueryCx};
use super::value::{Citation, Functor, Term, TraceStep};
use crate::cover::Operand;
use crate::duality::dual_atom;
use crate::expr::{Atom, GroupExpr};

/// A successful rule application on one summand pair.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub value: Operand,
    pub detail: String,
    pub citations: Vec<Citation>,
    pub subtrace: Vec<TraceStep>,
}

impl Outcome {
    fn new(value: impl Into<Operand>, detail: impl Into<String>) -> Self {
        Outcome { value: value.into(), detail: detail.into(), citations: Vec::new(), subtrace: Vec::new() }
    }

    fn zero(detail: impl Into<String>) -> Self {
        Outcome::new(GroupExpr::zero(), detail)
    }
}

/// What a rule may consult besides the pair itself.
pub struct RuleEnv<'a> {
    pub(crate) engine: &'a Engine,
    pub(crate) cx: &'a QueryCx,
}

pub trait Rule: Send + Sync {
    fn id(&self) -> &'static str;
    fn functor(&self) -> Functor;
    fn summary(&self) -> &'static str;
    /// Direct rules look only at the pair; the startup audit cross-checks them.
    fn direct(&self) -> bool {
        true
    }
    fn apply(&self, env: &RuleEnv<'_>, a: &Term, b: &Term) -> Option<Outcome>;
}

/// Vanishing rule given by an atom-pair predicate.
struct Vanish {
    id: &'static str,
    functor: Functor,
    summary: &'static str,
    holds: fn(Atom, Atom) -> bool,
}

impl Rule for Vanish {
    fn id(&self) -> &'static str {
        self.id
    }
    fn functor(&self) -> Functor {
        self.functor
    }
    fn summary(&self) -> &'static str {
        self.summary
    }
    fn apply(&self, _: &RuleEnv<'_>, a: &Term, b: &Term) -> Option<Outcome> {
        (self.holds)(a.atom()?, b.atom()?).then(|| Outcome::zero(self.summary))
    }
}

/// `Ext(P, X) = 0` for `P` a vector group or free, whatever `X` is.
struct ProjectiveSource;

impl Rule for ProjectiveSource {
    fn id(&self) -> &'static str {
        "E2-PROJ-SOURCE"
    }
    fn functor(&self) -> Functor {
        Functor::Ext
    }
    fn summary(&self) -> &'static str {
        "source is a vector group or free"
    }
    fn apply(&self, _: &RuleEnv<'_>, a: &Term, _: &Term) -> Option<Outcome> {
        matches!(a.atom()?, Atom::Real | Atom::Int).then(|| Outcome::zero(self.summary()))
    }
}

fn vanish(id: &'static str, functor: Functor, summary: &'static str, holds: fn(Atom, Atom) -> bool) -> Box<dyn Rule> {
    Box::new(Vanish { id, functor, summary, holds })
}

fn is_tf_target(b: Atom) -> bool {
    matches!(b, Atom::Int | Atom::Rat | Atom::Real)
}

fn is_injective_atom(b: Atom) -> bool {
    matches!(b, Atom::Real | Atom::Circle | Atom::OmegaTorus)
}

struct IntSource;

impl Rule for IntSource {
    fn id(&self) -> &'static str {
        "R3-INT-SOURCE"
    }
    fn functor(&self) -> Functor {
        Functor::Hom
    }
    fn summary(&self) -> &'static str {
        "Hom(Z, H) = H"
    }
    fn apply(&self, _: &RuleEnv<'_>, a: &Term, b: &Term) -> Option<Outcome> {
        (a.atom()? == Atom::Int).then(|| Outcome::new(b.to_operand(), self.summary()))
    }
}

struct CircleTarget;

impl Rule for CircleTarget {
    fn id(&self) -> &'static str {
        "R3-CIRCLE-TARGET"
    }
    fn functor(&self) -> Functor {
        Functor::Hom
    }
    fn summary(&self) -> &'static str {
        "Hom(G, T) is the dual of G"
    }
    fn apply(&self, _: &RuleEnv<'_>, a: &Term, b: &Term) -> Option<Outcome> {
        if b.atom()? != Atom::Circle {
            return None;
        }
        let d = dual_atom(a.atom()?).ok()?;
        Some(Outcome::new(d, self.summary()))
    }
}

struct PruferTarget;

impl Rule for PruferTarget {
    fn id(&self) -> &'static str {
        "R3-PRUFER-TARGET"
    }
    fn functor(&self) -> Functor {
        Functor::Hom
    }
    fn summary(&self) -> &'static str {
        "characters of a topological p-group land in Z(p^inf)"
    }
    fn apply(&self, _: &RuleEnv<'_>, a: &Term, b: &Term) -> Option<Outcome> {
        let (a, Atom::Prufer(p)) = (a.atom()?, b.atom()?) else { return None };
        if !a.is_topological_p_group(p) {
            return None;
        }
        Some(Outcome::new(dual_atom(a).ok()?, self.summary()))
    }
}

struct CyclicHom;

impl Rule for CyclicHom {
    fn id(&self) -> &'static str {
        "R4-CYCLIC"
    }
    fn functor(&self) -> Functor {
        Functor::Hom
    }
    fn summary(&self) -> &'static str {
        "Hom(Z(p^k), Z(p^j)) = Z(p^min(k,j))"
    }
    fn apply(&self, _: &RuleEnv<'_>, a: &Term, b: &Term) -> Option<Outcome> {
        match (a.atom()?, b.atom()?) {
            (Atom::Cyclic(p, k), Atom::Cyclic(q, j)) if p == q => {
                Some(Outcome::new(Atom::Cyclic(p, k.min(j)), self.summary()))
            }
            _ => None,
        }
    }
}

struct FactRule {
    id: &'static str,
    functor: Functor,
}

impl Rule for FactRule {
    fn id(&self) -> &'static str {
        self.id
    }
    fn functor(&self) -> Functor {
        self.functor
    }
    fn summary(&self) -> &'static str {
        "seeded fact"
    }
    fn apply(&self, env: &RuleEnv<'_>, a: &Term, b: &Term) -> Option<Outcome> {
        if env.cx.is_masked(&Goal::of_terms(self.functor, a, b)) {
            return None;
        }
        let (value, fact) = env.engine.facts().lookup(self.functor, a, b)?;
        let mut out = Outcome::new(value, format!("fact {}", fact.citation.id));
        out.citations.push(fact.citation.clone());
        Some(out)
    }
}

/// `F(a, b)` from `F(b^∨, a^∨)` evaluated with direct rules only.
struct Transpose {
    id: &'static str,
    functor: Functor,
}

impl Rule for Transpose {
    fn id(&self) -> &'static str {
        self.id
    }
    fn functor(&self) -> Functor {
        self.functor
    }
    fn summary(&self) -> &'static str {
        "duality transposition"
    }
    fn direct(&self) -> bool {
        false
    }
    fn apply(&self, env: &RuleEnv<'_>, a: &Term, b: &Term) -> Option<Outcome> {
        let (da, db) = (a.dual()?, b.dual()?);
        let inner = env.engine.eval_rules(self.functor, &db, &da, env.cx, false);
        let value = inner.value?;
        Some(Outcome {
            value,
            detail: format!("from {}({}, {})", self.functor, db.ascii(), da.ascii()),
            citations: inner.citations,
            subtrace: inner.trace,
        })
    }
}

/// `Ext(Z(p^k), X) = X / p^k X`, atom by atom.
struct CyclicExt;

impl Rule for CyclicExt {
    fn id(&self) -> &'static str {
        "E3-CYCLIC"
    }
    fn functor(&self) -> Functor {
        Functor::Ext
    }
    fn summary(&self) -> &'static str {
        "Ext(Z(p^k), X) = X/p^k X"
    }
    fn apply(&self, _: &RuleEnv<'_>, a: &Term, b: &Term) -> Option<Outcome> {
        let Atom::Cyclic(p, k) = a.atom()? else { return None };
        let x = b.atom()?;
        let value: GroupExpr = match x {
            _ if x.is_divisible() => GroupExpr::zero(),
            Atom::Int => Atom::Cyclic(p, k).into(),
            Atom::PadicInt(q) if q == p => Atom::Cyclic(p, k).into(),
            Atom::Cyclic(q, j) if q == p => Atom::Cyclic(p, k.min(j)).into(),
            Atom::OmegaProd(q) if q == p => x.into(),
            Atom::OmegaSum(q) if q == p => x.into(),
            _ => GroupExpr::zero(),
        };
        Some(Outcome::new(value, self.summary()))
    }
}

struct DeriveRule;

impl Rule for DeriveRule {
    fn id(&self) -> &'static str {
        "E7-DERIVE"
    }
    fn functor(&self) -> Functor {
        Functor::Ext
    }
    fn summary(&self) -> &'static str {
        "six-term exact sequence deduction"
    }
    fn direct(&self) -> bool {
        false
    }
    fn apply(&self, env: &RuleEnv<'_>, a: &Term, b: &Term) -> Option<Outcome> {
        if env.cx.budget == 0 {
            return None;
        }
        let goal = Goal::of_terms(Functor::Ext, a, b);
        let d = env.engine.derive_within(&goal, env.cx.budget, &env.cx.mask).ok()?;
        let value = d.value.clone();
        let detail = match &d.sequence {
            Some(s) => format!("derived from {}", s.label),
            None => "derived by direct rules".to_string(),
        };
        Some(Outcome { value, detail, citations: d.citations, subtrace: Vec::new() })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown rule {0:?}")]
pub struct UnknownRule(pub String);

/// Rules in priority order, per functor.
pub struct RuleRegistry {
    rules: Vec<Box<dyn Rule>>,
}

impl fmt::Debug for RuleRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rules.iter().map(|r| r.id())).finish()
    }
}

impl Default for RuleRegistry {
    fn default() -> Self {
        RuleRegistry::standard()
    }
}

impl RuleRegistry {
    pub fn empty() -> Self {
        RuleRegistry { rules: Vec::new() }
    }

    pub fn standard() -> Self {
        use Functor::{Ext, Hom};
        let rules: Vec<Box<dyn Rule>> = vec![
            vanish("R2-CONN-TD", Hom, "connected source, totally disconnected target", |a, b| {
                a.is_connected() && b.is_totally_disconnected()
            }),
            vanish("R2-COMPACT-TF", Hom, "compact source, target in {Z, Q, R}", |a, b| {
                a.is_compact() && is_tf_target(b)
            }),
            vanish("R2-CROSS-PRIME", Hom, "topological torsion groups at different primes", |a, b| {
                a.is_topological_torsion() && b.is_topological_torsion() && a.prime() != b.prime()
            }),
            vanish("R2-TORS-TF", Hom, "torsion source, torsion-free target", |a, b| {
                a.is_torsion() && b.is_torsion_free()
            }),
            vanish("R2-DIV-RED", Hom, "divisible source, reduced target", |a, b| {
                a.is_divisible() && b.is_reduced()
            }),
            vanish("R2-TT-TF", Hom, "topological torsion source, target in {Z, Q, R}", |a, b| {
                a.is_topological_torsion() && is_tf_target(b)
            }),
            Box::new(IntSource),
            Box::new(CircleTarget),
            Box::new(PruferTarget),
            Box::new(FactRule { id: "R4-FACT", functor: Hom }),
            Box::new(CyclicHom),
            Box::new(Transpose { id: "R5-TRANSPOSE", functor: Hom }),
            vanish("E2-INJ-TARGET", Ext, "target is a vector group or torus", |_, b| is_injective_atom(b)),
            Box::new(ProjectiveSource),
            Box::new(CyclicExt),
            vanish("E4-TD-COUNTDIV", Ext, "totally disconnected source, countable divisible target", |a, b| {
                a.is_totally_disconnected() && matches!(b, Atom::Rat | Atom::Prufer(_))
            }),
            vanish("E4-CODIV-DIV", Ext, "codivisible topological torsion source, divisible target without Z-type part", |a, b| {
                matches!(a, Atom::PadicInt(_) | Atom::PadicRat(_))
                    && matches!(
                        b,
                        Atom::Real | Atom::Circle | Atom::OmegaTorus | Atom::Prufer(_) | Atom::PadicRat(_) | Atom::Solenoid
                    )
            }),
            Box::new(FactRule { id: "E5-FACT", functor: Ext }),
            Box::new(Transpose { id: "E6-TRANSPOSE", functor: Ext }),
            Box::new(DeriveRule),
        ];
        RuleRegistry { rules }
    }

    pub fn register(&mut self, rule: Box<dyn Rule>) {
        self.rules.push(rule);
    }

    pub fn disable(&mut self, id: &str) -> Result<(), UnknownRule> {
        let before = self.rules.len();
        self.rules.retain(|r| r.id() != id);
        if self.rules.len() == before {
            Err(UnknownRule(id.to_string()))
        } else {
            Ok(())
        }
    }

    pub fn rules(&self, f: Functor) -> impl Iterator<Item = &dyn Rule> {
        self.rules.iter().filter(move |r| r.functor() == f).map(|r| r.as_ref())
    }

    pub fn get(&self, id: &str) -> Option<&dyn Rule> {
        self.rules.iter().find(|r| r.id() == id).map(|r| r.as_ref())
    }

    pub fn ids(&self) -> Vec<&'static str> {
        self.rules.iter().map(|r| r.id()).collect()
    }
}
