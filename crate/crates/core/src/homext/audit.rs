//! Startup checks: direct rules agree pairwise and with transposition, and
//! no seeded fact contradicts a derivation.

use thiserror::Error;

use super::engine::{Engine, Goal};
use super::rules::RuleEnv;
use super::value::{pair_label, Functor, Term};
use crate::cover::{CoverExpr, Operand};
use crate::expr::Atom;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AuditReport {
    pub pairs_checked: usize,
    pub applications: usize,
    pub disagreements: Vec<String>,
}

impl AuditReport {
    pub fn merge(&mut self, other: AuditReport) {
        self.pairs_checked += other.pairs_checked;
        self.applications += other.applications;
        self.disagreements.extend(other.disagreements);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("startup audit failed: {}", disagreements.join("; "))]
pub struct AuditError {
    pub disagreements: Vec<String>,
}

/// Terms the rule audit ranges over.
pub fn audit_universe() -> Vec<Term> {
    let mut atoms = vec![Atom::Real, Atom::Circle, Atom::OmegaTorus, Atom::Solenoid, Atom::Int, Atom::Rat];
    for p in [2, 3] {
        atoms.extend([Atom::PadicInt(p), Atom::PadicRat(p), Atom::Prufer(p), Atom::OmegaProd(p), Atom::OmegaSum(p)]);
        atoms.extend((1..=2).map(|k| Atom::Cyclic(p, k)));
    }
    let mut terms: Vec<Term> = atoms.into_iter().map(Term::Atom).collect();
    terms.extend([2, 3].map(|p| Term::Cover(CoverExpr::Xi(p))));
    terms
}

fn direct_values(engine: &Engine, f: Functor, a: &Term, b: &Term) -> Vec<(&'static str, Operand)> {
    let cx = engine.root_cx();
    let env = RuleEnv { engine, cx: &cx };
    engine
        .registry()
        .rules(f)
        .filter(|r| r.direct())
        .filter_map(|r| r.apply(&env, a, b).map(|o| (r.id(), o.value.normalized())))
        .collect()
}

pub fn audit_rules(engine: &Engine) -> AuditReport {
    let mut report = AuditReport::default();
    let universe = audit_universe();
    for f in [Functor::Hom, Functor::Ext] {
        for a in &universe {
            for b in &universe {
                report.pairs_checked += 1;
                let mut vals = direct_values(engine, f, a, b);
                report.applications += vals.len();
                if let (Some(da), Some(db)) = (a.dual(), b.dual()) {
                    vals.extend(direct_values(engine, f, &db, &da));
                }
                if let Some((id0, v0)) = vals.first() {
                    for (id, v) in &vals[1..] {
                        if v != v0 {
                            report.disagreements.push(format!(
                                "{}: {id0} gives {} but {id} gives {}",
                                pair_label(f, a, b),
                                v0.ascii(),
                                v.ascii()
                            ));
                        }
                    }
                }
            }
        }
    }
    report
}

pub fn audit_facts(engine: &Engine) -> AuditReport {
    let mut report = AuditReport::default();
    for fact in engine.facts().facts() {
        let Some(f) = fact.functor() else { continue };
        for (lhs, _, rhs, value) in fact.instances(&[2, 3], &[1, 2]) {
            report.pairs_checked += 1;
            let goal = Goal::of_terms(f, &lhs, &rhs);
            if let Ok(d) = engine.derive_within(&goal, engine.config().depth, &[]) {
                report.applications += 1;
                if d.value != value.clone().normalized() {
                    report.disagreements.push(format!(
                        "fact {} says {} = {} but a derivation gives {}",
                        fact.citation.id,
                        goal.label(),
                        value.ascii(),
                        d.value.ascii()
                    ));
                }
            }
        }
    }
    report
}
