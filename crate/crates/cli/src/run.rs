//! Engine construction and query dispatch.

use std::path::PathBuf;
use std::time::Instant;

use lcacalc_core::classify::{
    classify_injective, classify_projective, cover_member, decompose, member, properties, resolve, CategoryTag,
    ClassifyError,
};
use lcacalc_core::cover::{CoverExpr, Operand};
use lcacalc_core::duality::{dual, DualityError};
use lcacalc_core::finab::{crosscheck, FinAb};
use lcacalc_core::homext::{
    audit_universe, Answer, AuditError, Countable, Engine, EngineConfig, FactBase, FactError, Functor, HomExtValue,
    RuleRegistry, UnknownRule,
};
use lcacalc_core::selftest;
use serde_json::{json, Value};
use thiserror::Error;

use crate::query::{Query, QueryError};
use crate::record::{CitationEntry, Kind, Record, TraceEntry};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Query(#[from] QueryError),
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error(transparent)]
    Facts(#[from] FactError),
    #[error(transparent)]
    Audit(#[from] AuditError),
    #[error(transparent)]
    Duality(#[from] DualityError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error("finite oracles disagree: {0}")]
    Oracle(String),
}

impl From<UnknownRule> for CliError {
    fn from(e: UnknownRule) -> Self {
        CliError::UnknownRule(e.0)
    }
}

impl CliError {
    /// Stable identifier printed with the message.
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Query(q) => q.code(),
            CliError::UnknownRule(_) => "E-UNKNOWN-RULE",
            CliError::Facts(_) => "E-FACTS",
            CliError::Audit(_) => "E-AUDIT",
            CliError::Duality(_) => "E-DUALITY",
            CliError::Classify(ClassifyError::NotAMember { .. }) => "E-NOT-A-MEMBER",
            CliError::Classify(ClassifyError::Unsupported(_)) => "E-UNSUPPORTED",
            CliError::Classify(ClassifyError::ResolutionUnsupported(_)) => "E-RESOLUTION-UNSUPPORTED",
            CliError::Classify(ClassifyError::RankOverflow(_)) => "E-RANK-OVERFLOW",
            CliError::Oracle(_) => "E-ORACLE",
        }
    }

    /// 1 for malformed input, 2 for everything the engine rejects.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Query(_) | CliError::UnknownRule(_) => 1,
            _ => 2,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct EngineOptions {
    pub facts: Option<PathBuf>,
    pub depth: Option<u32>,
    pub disabled_rules: Vec<String>,
}

pub fn build_engine(opts: &EngineOptions) -> Result<Engine, CliError> {
    let facts = match &opts.facts {
        Some(path) => FactBase::load(path)?,
        None => FactBase::builtin(),
    };
    let mut registry = RuleRegistry::standard();
    for id in &opts.disabled_rules {
        registry.disable(id)?;
    }
    let mut config = EngineConfig::default();
    if let Some(d) = opts.depth {
        config.depth = d;
    }
    Ok(Engine::new(facts, registry, config)?)
}

/// A finished query: the record, whether it counts as success, and an
/// optional line for stderr that is kept out of the record.
pub struct Outcome {
    pub record: Record,
    pub ok: bool,
    pub note: Option<String>,
}

impl Outcome {
    fn ok(record: Record) -> Self {
        Outcome { record, ok: true, note: None }
    }
}

fn boolean(query: String, holds: bool, rule: &str, subject: String, reason: String) -> Record {
    let mut r = Record::new(query, Kind::Boolean, holds.to_string());
    r.trace.push(TraceEntry { rule: rule.into(), subject, detail: reason });
    r
}

fn value_record(query: String, v: &HomExtValue) -> Record {
    match v {
        HomExtValue::Expr(g) => {
            let mut r = Record::new(query, Kind::Expr, g.ascii());
            r.display = Some(g.unicode());
            r
        }
        HomExtValue::Cover(c) => {
            let mut r = Record::new(query, Kind::Cover, c.ascii());
            r.display = Some(c.unicode());
            r
        }
        HomExtValue::Unresolved { reason, .. } => Record::new(query, Kind::Unresolved, reason.clone()),
    }
}

fn answer_record(query: String, ans: &Answer) -> Record {
    let mut r = value_record(query, &ans.value);
    r.trace = ans.trace.iter().map(TraceEntry::from).collect();
    r.citations = ans.citations.iter().map(CitationEntry::from).collect();
    r
}

fn membership(x: &Operand, tag: CategoryTag) -> (bool, String) {
    match x {
        Operand::Expr(g) | Operand::Cover(CoverExpr::Split(g)) => {
            let m = member(g, tag.base);
            let how = if m { "every atom lies in" } else { "some atom lies outside" };
            (m, format!("{how} {}", tag.base))
        }
        Operand::Cover(c) if tag.heart => {
            let m = cover_member(c, tag.base);
            let (g, h) = c.presentation();
            let how = if m { "both lie in" } else { "not both in" };
            (m, format!("{} and {} {how} {}", g.ascii(), h.ascii(), tag.base))
        }
        Operand::Cover(_) => (false, format!("a non-split quotient is not an object of {}", tag.base)),
    }
}

fn unresolved_rate(engine: &Engine) -> String {
    let universe = audit_universe();
    let mut total = 0;
    let mut open = 0;
    for f in [Functor::Hom, Functor::Ext] {
        for a in &universe {
            for b in &universe {
                total += 1;
                if !engine.query(f, &a.to_operand(), &b.to_operand()).value.is_resolved() {
                    open += 1;
                }
            }
        }
    }
    format!("{open} of {total} Hom/Ext atom pairs")
}

pub fn run(engine: &Engine, q: &Query, seed: u64) -> Result<Outcome, CliError> {
    let text = q.to_string();
    Ok(match q {
        Query::Dual(g) => {
            let d = dual(g)?;
            let mut r = Record::new(text, Kind::Expr, d.ascii());
            r.display = Some(d.unicode());
            Outcome::ok(r)
        }
        Query::Hom(a, b) => Outcome::ok(answer_record(text, &engine.hom(a, b))),
        Query::Ext(a, b) => Outcome::ok(answer_record(text, &engine.ext(a, b))),
        Query::ExtCountable(a, b) => {
            let ans = engine.ext(a, b);
            let c = engine.ext_countable(a, b);
            let kind = if c.verdict == Countable::Unknown { Kind::Unresolved } else { Kind::Boolean };
            let mut r = Record::new(text, kind, c.verdict.to_string());
            r.trace = ans.trace.iter().map(TraceEntry::from).collect();
            r.trace.push(TraceEntry {
                rule: c.rule.into(),
                subject: format!("Ext({}, {}) countable", a.ascii(), b.ascii()),
                detail: c.detail,
            });
            r.citations = ans.citations.iter().map(CitationEntry::from).collect();
            Outcome::ok(r)
        }
        Query::Props(g) => {
            let v = properties(g);
            let mut map = serde_json::Map::new();
            for (name, flag) in v.flags() {
                map.insert(name.into(), Value::Bool(flag));
            }
            map.insert("torsion_primes".into(), json!(v.torsion_primes));
            Outcome::ok(Record::new(text, Kind::PropertyVector, Value::Object(map)))
        }
        Query::Decompose(g) => {
            let d = decompose(g);
            let value = json!({
                "s1_part": d.s1_part.ascii(),
                "r_part": d.r_part.ascii(),
                "t_part": d.t_part.ascii(),
                "z_part": d.z_part.ascii(),
            });
            Outcome::ok(Record::new(text, Kind::Report, value))
        }
        Query::Member(x, tag) => {
            let (m, why) = membership(x, *tag);
            Outcome::ok(boolean(text, m, "MEMBER", format!("{} in {tag}", x.ascii()), why))
        }
        Query::Injective(x, tag) => {
            let v = classify_injective(x, *tag)?;
            Outcome::ok(boolean(text, v.holds, "CLASSIFY-INJECTIVE", format!("{} in {tag}", x.ascii()), v.reason))
        }
        Query::Projective(x, tag) => {
            let v = classify_projective(x, *tag)?;
            Outcome::ok(boolean(text, v.holds, "CLASSIFY-PROJECTIVE", format!("{} in {tag}", x.ascii()), v.reason))
        }
        Query::Resolve(g) => {
            let r = resolve(g)?;
            let value = json!({
                "target": r.target.ascii(),
                "d0": r.d0.ascii(),
                "d1": r.d1.ascii(),
                "d1_symbolic": r.d1_symbolic.iter().map(|c| c.ascii()).collect::<Vec<_>>(),
            });
            Outcome::ok(Record::new(text, Kind::Resolution, value))
        }
        Query::OracleExt(g, a) => oracle(text, g, a)?,
        Query::Derive(f, a, b) => Outcome::ok(derive(engine, text, *f, a, b)),
        Query::Selftest => {
            let start = Instant::now();
            let report = selftest::run(engine, seed);
            let criteria: Vec<Value> = report
                .criteria
                .iter()
                .map(|c| {
                    json!({
                        "number": c.number,
                        "title": c.title,
                        "passed": c.passed,
                        "detail": c.detail,
                        "failures": c.failures,
                    })
                })
                .collect();
            let value = json!({
                "criteria": criteria,
                "passed": format!("{}/{}", report.passed(), report.criteria.len()),
                "unresolved": unresolved_rate(engine),
            });
            let timings: Vec<String> = report.criteria.iter().map(|c| format!("{}: {} ms", c.number, c.millis)).collect();
            let note = format!("selftest took {} ms ({})", start.elapsed().as_millis(), timings.join(", "));
            Outcome { record: Record::new(text, Kind::Report, value), ok: report.all_passed(), note: Some(note) }
        }
        Query::Rules => {
            let rules: Vec<Value> = [Functor::Hom, Functor::Ext]
                .into_iter()
                .flat_map(|f| engine.registry().rules(f))
                .map(|r| {
                    json!({
                        "id": r.id(),
                        "functor": r.functor().to_string(),
                        "direct": r.direct(),
                        "summary": r.summary(),
                    })
                })
                .collect();
            Outcome::ok(Record::new(text, Kind::Report, Value::Array(rules)))
        }
    })
}

fn oracle(text: String, g: &FinAb, a: &FinAb) -> Result<Outcome, CliError> {
    let c = crosscheck(g, a);
    if !c.agrees() {
        return Err(CliError::Oracle(c.mismatches.join("; ")));
    }
    let pair = format!("Ext({}, {})", g.to_expr().ascii(), a.to_expr().ascii());
    let formula = c.formula.to_expr();
    let mut r = Record::new(text, Kind::Expr, formula.ascii());
    r.display = Some(formula.unicode());
    r.trace.push(TraceEntry {
        rule: "FORMULA".into(),
        subject: pair.clone(),
        detail: format!("invariant factors {}", c.formula),
    });
    if let Some(q) = &c.cocycle_quotient {
        r.trace.push(TraceEntry {
            rule: "COCYCLE-SNF".into(),
            subject: pair.clone(),
            detail: format!("cocycles modulo coboundaries {q}"),
        });
    }
    if let Some(ex) = &c.exhaustive {
        r.trace.push(TraceEntry {
            rule: "EXHAUSTIVE".into(),
            subject: pair.clone(),
            detail: format!("{} cocycles, {} coboundaries, {} classes", ex.cocycles, ex.coboundaries, ex.classes),
        });
    }
    for s in &c.skipped {
        r.trace.push(TraceEntry { rule: "SKIPPED".into(), subject: pair.clone(), detail: s.clone() });
    }
    Ok(Outcome::ok(r))
}

fn derive(engine: &Engine, text: String, f: Functor, a: &Operand, b: &Operand) -> Record {
    match engine.derive(f, a, b) {
        Ok(d) => {
            let v = match &d.value {
                Operand::Expr(g) => HomExtValue::Expr(g.clone()),
                Operand::Cover(c) => HomExtValue::Cover(c.clone()),
            };
            let mut r = value_record(text, &v);
            if let Some(seq) = &d.sequence {
                r.trace.push(TraceEntry { rule: "SEQUENCE".into(), subject: seq.label.clone(), detail: seq.render() });
            }
            r.trace.extend(d.steps.iter().map(|s| TraceEntry {
                rule: s.rule.clone(),
                subject: s.output.clone(),
                detail: s.inputs.join("; "),
            }));
            r.citations = d.citations.iter().map(CitationEntry::from).collect();
            r
        }
        Err(e) => {
            let mut r = Record::new(text, Kind::Unresolved, e.reason.clone());
            r.trace = e
                .explored
                .iter()
                .map(|x| TraceEntry { rule: "EXPLORED".into(), subject: e.goal.label(), detail: x.clone() })
                .collect();
            r
        }
    }
}
