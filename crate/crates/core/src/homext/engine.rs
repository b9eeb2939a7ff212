//! Query evaluation: biadditive splitting, rule dispatch, memoization.

use std::collections::HashMap;
use std::sync::Mutex;

use super::audit::{audit_facts, audit_rules, AuditError, AuditReport};
use super::facts::FactBase;
use super::rules::{RuleEnv, RuleRegistry};
use super::value::{pair_label, Answer, Citation, Functor, HomExtValue, Term, TraceStep};
use crate::cover::Operand;
use crate::duality::dual;
use crate::expr::GroupExpr;

/// A Hom or Ext query on two operands.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Goal {
    pub functor: Functor,
    pub a: Operand,
    pub b: Operand,
}

impl Goal {
    pub fn new(functor: Functor, a: impl Into<Operand>, b: impl Into<Operand>) -> Self {
        Goal { functor, a: a.into().normalized(), b: b.into().normalized() }
    }

    pub fn of_terms(functor: Functor, a: &Term, b: &Term) -> Self {
        Goal { functor, a: a.to_operand(), b: b.to_operand() }
    }

    /// `F(b^∨, a^∨)`, when both duals exist.
    pub fn transpose(&self) -> Option<Goal> {
        let da = dual(self.a.as_expr()?).ok()?;
        let db = dual(self.b.as_expr()?).ok()?;
        Some(Goal { functor: self.functor, a: db.into(), b: da.into() })
    }

    pub fn label(&self) -> String {
        format!("{}({}, {})", self.functor, self.a.ascii(), self.b.ascii())
    }
}

/// Per-query state: goals under derivation and the remaining derive depth.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QueryCx {
    pub(crate) mask: Vec<Goal>,
    pub(crate) budget: u32,
}

impl QueryCx {
    pub(crate) fn is_masked(&self, g: &Goal) -> bool {
        if self.mask.is_empty() {
            return false;
        }
        self.mask.contains(g) || g.transpose().is_some_and(|t| self.mask.contains(&t))
    }
}

#[derive(Clone, Debug)]
pub(crate) struct PairEval {
    pub value: Option<Operand>,
    pub trace: Vec<TraceStep>,
    pub citations: Vec<Citation>,
    pub tried: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EngineConfig {
    /// Bound on nested exact-sequence deductions.
    pub depth: u32,
    /// Whether `new` also re-derives every seeded fact.
    pub audit_facts: bool,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig { depth: 3, audit_facts: true }
    }
}

type MemoKey = (Functor, Term, Term, QueryCx);

pub struct Engine {
    facts: FactBase,
    registry: RuleRegistry,
    config: EngineConfig,
    memo: Mutex<HashMap<MemoKey, PairEval>>,
    audit: AuditReport,
}

impl std::fmt::Debug for Engine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Engine")
            .field("facts", &self.facts.len())
            .field("rules", &self.registry)
            .field("config", &self.config)
            .finish()
    }
}

fn biadd_id(f: Functor) -> &'static str {
    match f {
        Functor::Hom => "R1-BIADDITIVE",
        Functor::Ext => "E1-BIADDITIVE",
    }
}

fn dedup_citations(mut c: Vec<Citation>) -> Vec<Citation> {
    c.sort();
    c.dedup();
    c
}

impl Engine {
    /// Builds an engine and runs the startup audit.
    pub fn new(facts: FactBase, registry: RuleRegistry, config: EngineConfig) -> Result<Engine, AuditError> {
        let mut engine = Engine {
            facts,
            registry,
            config,
            memo: Mutex::new(HashMap::new()),
            audit: AuditReport::default(),
        };
        let mut report = audit_rules(&engine);
        if config.audit_facts && report.disagreements.is_empty() {
            report.merge(audit_facts(&engine));
        }
        if !report.disagreements.is_empty() {
            return Err(AuditError { disagreements: report.disagreements });
        }
        engine.audit = report;
        Ok(engine)
    }

    pub fn standard() -> Engine {
        Engine::new(FactBase::builtin(), RuleRegistry::standard(), EngineConfig::default())
            .expect("shipped rules and facts pass the audit")
    }

    pub fn facts(&self) -> &FactBase {
        &self.facts
    }

    pub fn registry(&self) -> &RuleRegistry {
        &self.registry
    }

    pub fn config(&self) -> EngineConfig {
        self.config
    }

    pub fn audit_report(&self) -> &AuditReport {
        &self.audit
    }

    pub(crate) fn root_cx(&self) -> QueryCx {
        QueryCx { mask: Vec::new(), budget: self.config.depth }
    }

    pub fn hom(&self, a: &Operand, b: &Operand) -> Answer {
        self.query(Functor::Hom, a, b)
    }

    pub fn ext(&self, a: &Operand, b: &Operand) -> Answer {
        self.query(Functor::Ext, a, b)
    }

    pub fn query(&self, f: Functor, a: &Operand, b: &Operand) -> Answer {
        self.query_cx(f, a, b, &self.root_cx())
    }

    pub(crate) fn query_cx(&self, f: Functor, a: &Operand, b: &Operand, cx: &QueryCx) -> Answer {
        let goal = Goal::new(f, a.clone(), b.clone());
        if cx.is_masked(&goal) {
            let id = "MASKED".to_string();
            return Answer {
                value: HomExtValue::Unresolved {
                    reason: format!("{} is under derivation", goal.label()),
                    rule_trace: vec![id.clone()],
                },
                trace: vec![TraceStep { rule: id, pair: goal.label(), detail: "goal under derivation".into() }],
                citations: Vec::new(),
            };
        }
        self.combine(f, &goal, |x, y| self.eval_pair(f, x, y, cx))
    }

    /// Evaluates every summand pair and sums the results.
    pub(crate) fn combine(&self, f: Functor, goal: &Goal, mut eval: impl FnMut(&Term, &Term) -> PairEval) -> Answer {
        let (ta, tb) = (Term::split(&goal.a), Term::split(&goal.b));
        if ta.is_empty() || tb.is_empty() {
            return Answer {
                value: HomExtValue::zero(),
                trace: vec![TraceStep {
                    rule: biadd_id(f).into(),
                    pair: goal.label(),
                    detail: "zero operand".into(),
                }],
                citations: Vec::new(),
            };
        }
        let mut trace = Vec::new();
        let mut citations = Vec::new();
        let mut values = Vec::new();
        let mut unresolved: Vec<(String, Vec<String>)> = Vec::new();
        for x in &ta {
            for y in &tb {
                let r = eval(x, y);
                trace.extend(r.trace);
                citations.extend(r.citations);
                match r.value {
                    Some(v) => values.push(v),
                    None => unresolved.push((pair_label(f, x, y), r.tried)),
                }
            }
        }
        let citations = dedup_citations(citations);
        if !unresolved.is_empty() {
            let pairs: Vec<&str> = unresolved.iter().map(|(p, _)| p.as_str()).collect();
            let mut rule_trace: Vec<String> = unresolved.iter().flat_map(|(_, t)| t.iter().cloned()).collect();
            rule_trace.dedup();
            return Answer {
                value: HomExtValue::Unresolved {
                    reason: format!("no rule determines {}", pairs.join(", ")),
                    rule_trace,
                },
                trace,
                citations,
            };
        }
        let mut sum = GroupExpr::zero();
        let mut cover = None;
        let mut clash = false;
        for v in values {
            match v {
                Operand::Expr(g) => sum = sum.direct_sum(&g),
                Operand::Cover(c) => {
                    if cover.is_some() {
                        clash = true;
                    }
                    cover = Some(c);
                }
            }
        }
        let value = match cover {
            None => HomExtValue::Expr(sum),
            Some(c) if sum.is_zero() && !clash => HomExtValue::Cover(c),
            Some(_) => {
                trace.push(TraceStep {
                    rule: biadd_id(f).into(),
                    pair: goal.label(),
                    detail: "a cover summed with other nonzero summands has no catalog form".into(),
                });
                HomExtValue::Unresolved {
                    reason: "sum of a cover with other nonzero summands".into(),
                    rule_trace: vec![biadd_id(f).into()],
                }
            }
        };
        if ta.len() > 1 || tb.len() > 1 {
            trace.push(TraceStep {
                rule: biadd_id(f).into(),
                pair: goal.label(),
                detail: format!("sum over {} summand pairs", ta.len() * tb.len()),
            });
        }
        Answer { value, trace, citations }
    }

    pub(crate) fn eval_pair(&self, f: Functor, a: &Term, b: &Term, cx: &QueryCx) -> PairEval {
        if cx.is_masked(&Goal::of_terms(f, a, b)) {
            return PairEval {
                value: None,
                trace: vec![TraceStep {
                    rule: "MASKED".into(),
                    pair: pair_label(f, a, b),
                    detail: "goal under derivation".into(),
                }],
                citations: Vec::new(),
                tried: vec!["MASKED".into()],
            };
        }
        let key = (f, a.clone(), b.clone(), cx.clone());
        if let Some(hit) = self.memo.lock().expect("memo lock").get(&key) {
            return hit.clone();
        }
        let r = self.eval_rules(f, a, b, cx, true);
        self.memo.lock().expect("memo lock").insert(key, r.clone());
        r
    }

    /// First applicable rule in priority order; `indirect` admits
    /// transposition and derivation.
    pub(crate) fn eval_rules(&self, f: Functor, a: &Term, b: &Term, cx: &QueryCx, indirect: bool) -> PairEval {
        let env = RuleEnv { engine: self, cx };
        let mut tried = Vec::new();
        for rule in self.registry.rules(f) {
            if !indirect && !rule.direct() {
                continue;
            }
            if let Some(out) = rule.apply(&env, a, b) {
                let mut trace = out.subtrace;
                trace.push(TraceStep { rule: rule.id().into(), pair: pair_label(f, a, b), detail: out.detail });
                return PairEval { value: Some(out.value.normalized()), trace, citations: out.citations, tried };
            }
            tried.push(rule.id().to_string());
        }
        if tried.is_empty() {
            tried.push("NO-RULES".into());
        }
        PairEval {
            value: None,
            trace: vec![TraceStep {
                rule: "UNRESOLVED".into(),
                pair: pair_label(f, a, b),
                detail: format!("no rule determines this value; tried {}", tried.join(", ")),
            }],
            citations: Vec::new(),
            tried,
        }
    }
}
