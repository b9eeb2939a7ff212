//! Whether `Ext(a, b)` is countable.

use std::fmt;

use super::engine::Engine;
use super::value::HomExtValue;
use crate::classify::properties;
use crate::cover::{CoverExpr, Operand};
use crate::expr::{Atom, GroupExpr};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Countable {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Countable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Countable::Yes => "yes",
            Countable::No => "no",
            Countable::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountabilityAnswer {
    pub verdict: Countable,
    pub rule: &'static str,
    pub detail: String,
    /// The Ext value, when the engine resolved it.
    pub value: Option<HomExtValue>,
}

fn cover_countable(c: &CoverExpr) -> bool {
    properties(&c.presentation().0).countable
}

fn countable_discrete_p_group(g: &GroupExpr, p: u64) -> bool {
    g.all(|a| matches!(a, Atom::Cyclic(q, _) | Atom::Prufer(q) | Atom::OmegaSum(q) if q == p))
}

impl Engine {
    pub fn ext_countable(&self, a: &Operand, b: &Operand) -> CountabilityAnswer {
        let ans = self.ext(a, b);
        let answer = |verdict, rule, detail: String, value| CountabilityAnswer { verdict, rule, detail, value };
        match &ans.value {
            HomExtValue::Expr(g) => {
                let yes = properties(g).countable;
                let v = if yes { Countable::Yes } else { Countable::No };
                return answer(v, "CNT-RESOLVED", format!("Ext = {}", g.ascii()), Some(ans.value.clone()));
            }
            HomExtValue::Cover(c) => {
                let v = if cover_countable(c) { Countable::Yes } else { Countable::No };
                return answer(v, "CNT-RESOLVED", format!("Ext = {}", c.ascii()), Some(ans.value.clone()));
            }
            HomExtValue::Unresolved { .. } => {}
        }
        let (Some(src), Some(tgt)) = (a.as_expr(), b.as_expr()) else {
            return answer(Countable::Unknown, "CNT-NONE", "a cover operand with unresolved Ext".into(), None);
        };
        let (ps, pt) = (properties(src), properties(tgt));
        if src.all(|x| matches!(x, Atom::Solenoid | Atom::Circle)) && tgt.all(|x| matches!(x, Atom::Int | Atom::Rat)) {
            return answer(
                Countable::Yes,
                "CNT-S1Z",
                "dual of a countable finite-rank torsion-free group against one".into(),
                None,
            );
        }
        if ps.compact && ps.topological_torsion && pt.countable {
            return answer(Countable::Yes, "CNT-TORSION-COUNTABLE", "compact topological torsion source, countable target".into(), None);
        }
        if ps.compact && !src.any(|x| x == Atom::OmegaTorus) && pt.countable {
            return answer(Countable::Yes, "CNT-COMPACT-COUNTABLE", "compact source of finite S1-rank, countable target".into(), None);
        }
        if let [Atom::Cyclic(p, 1)] = tgt.atoms() {
            if countable_discrete_p_group(src, *p) {
                return if src.any(|x| matches!(x, Atom::OmegaSum(_))) {
                    answer(Countable::No, "CNT-P-RANK", format!("source has infinite {p}-rank"), None)
                } else {
                    answer(Countable::Yes, "CNT-P-RANK", format!("source has finite {p}-rank"), None)
                };
            }
        }
        if tgt.atoms() == [Atom::Int] && ps.countable {
            if src.all(Atom::is_torsion) && src.any(|x| matches!(x, Atom::Prufer(_) | Atom::OmegaSum(_))) {
                return answer(Countable::No, "CNT-TORSION-Z", "infinite countable torsion source against Z".into(), None);
            }
            if src.any(|x| matches!(x, Atom::Rat | Atom::Prufer(_) | Atom::OmegaSum(_))) {
                return answer(
                    Countable::No,
                    "CNT-FINITE-RANKS-Z",
                    "countable source not of the form free plus finite, against Z".into(),
                    None,
                );
            }
        }
        answer(Countable::Unknown, "CNT-NONE", "no countability rule applies".into(), None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(e: &Engine, a: Atom, b: Atom) -> Countable {
        e.ext_countable(&a.into(), &b.into()).verdict
    }

    #[test]
    fn documented_cases() {
        let e = Engine::standard();
        assert_eq!(v(&e, Atom::OmegaSum(2), Atom::Cyclic(2, 1)), Countable::No);
        assert_eq!(v(&e, Atom::Solenoid, Atom::Rat), Countable::Yes);
        assert_eq!(v(&e, Atom::Cyclic(2, 3), Atom::Int), Countable::Yes);
        assert_eq!(v(&e, Atom::Rat, Atom::Int), Countable::No);
    }
}
