//! The acceptance suite, shared by the `acceptance` test target and the
//! `selftest` command.

use std::fmt;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classify::{
    classify_injective, classify_projective, cyclic_truncation_exact, is_essentially_injective, properties,
    resolve, CategoryTag, ClassifyError,
};
use crate::cover::Operand;
use crate::duality::dual;
use crate::expr::{factorize, Atom, GroupExpr};
use crate::finab::{crosscheck, ext_finite, CocycleSolver, FinAb, EXHAUSTIVE_BOUND, MAX_GROUP_ORDER, MAX_PRODUCT_ORDER};
use crate::homext::{
    audit_universe, solve_les, Citation, CokerFact, Countable, Engine, Functor, HomExtValue, Provenance,
    SixTermSeq, Slot,
};
use crate::parse::{parse_category, parse_operand};

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub number: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub failures: Vec<String>,
    pub millis: u128,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {}. {}: {} ({} ms)",
            if self.passed { "PASS" } else { "FAIL" },
            self.number,
            self.title,
            self.detail,
            self.millis
        )
    }
}

#[derive(Clone, Debug)]
pub struct SelftestReport {
    pub criteria: Vec<CriterionResult>,
}

impl SelftestReport {
    pub fn all_passed(&self) -> bool {
        self.criteria.iter().all(|c| c.passed)
    }

    pub fn passed(&self) -> usize {
        self.criteria.iter().filter(|c| c.passed).count()
    }
}

/// Failures shown per criterion before truncating.
const SHOWN_FAILURES: usize = 8;

struct Tally {
    checked: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { checked: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

fn result(number: u8, title: &'static str, start: Instant, passed: bool, detail: String, mut failures: Vec<String>) -> CriterionResult {
    let extra = failures.len().saturating_sub(SHOWN_FAILURES);
    failures.truncate(SHOWN_FAILURES);
    if extra > 0 {
        failures.push(format!("... and {extra} more"));
    }
    CriterionResult { number, title, passed, detail, failures, millis: start.elapsed().as_millis() }
}

pub fn run(engine: &Engine, seed: u64) -> SelftestReport {
    SelftestReport {
        criteria: vec![
            identities(engine),
            injectivity_equivalence(engine),
            duality(engine, seed),
            oracle_triangulation(engine),
            classification_tables(),
            resolutions(),
            countability(engine),
            hygiene(engine, seed),
        ],
    }
}

fn op(s: &str) -> Operand {
    parse_operand(s).expect("selftest operands parse")
}

/// The identity table of criterion 1, as `(functor, a, b, expected)`.
pub fn identity_table() -> Vec<(Functor, Operand, Operand, Operand)> {
    let mut rows = Vec::new();
    for p in [2u64, 3, 5] {
        let (zp, qp, pr, xi) = (format!("Zp({p})"), format!("Qp({p})"), format!("Pr({p})"), format!("Xi({p})"));
        let mut push = |f, a: &str, b: &str, v: &str| rows.push((f, op(a), op(b), op(v)));
        push(Functor::Ext, &pr, &zp, &zp);
        push(Functor::Ext, &pr, "Z", &zp);
        push(Functor::Hom, &zp, &zp, &zp);
        push(Functor::Hom, &pr, &pr, &zp);
        push(Functor::Ext, &qp, &qp, "0");
        push(Functor::Ext, &qp, &zp, "0");
        push(Functor::Ext, &pr, &qp, "0");
        for k in 1..=3 {
            let c = format!("C({})", p.pow(k));
            push(Functor::Ext, "T", &c, &c);
        }
        push(Functor::Ext, &xi, "T", &xi);
        push(Functor::Ext, &xi, &pr, &xi);
    }
    rows.push((Functor::Ext, op("T"), op("Z"), op("Z")));
    rows.push((Functor::Ext, op("T"), op("Q"), op("Q")));
    rows.push((Functor::Ext, op("Sol"), op("Q"), op("Q")));
    rows
}

pub fn identities(engine: &Engine) -> CriterionResult {
    let start = Instant::now();
    let mut t = Tally::new();
    let mut derived = 0;
    for (f, a, b, expected) in identity_table() {
        let label = format!("{f}({}, {})", a.ascii(), b.ascii());
        let got = engine.query(f, &a, &b).value;
        t.check(got == HomExtValue::from(expected.clone()), || {
            format!("{label}: expected {}, engine gives {}", expected.ascii(), got.ascii())
        });
        if let Ok(d) = engine.derive(f, &a, &b) {
            derived += 1;
            t.check(d.value == expected, || {
                format!("{label}: derivation gives {}, expected {}", d.value.ascii(), expected.ascii())
            });
            t.check(d.replay().as_ref() == Some(&d.value), || format!("{label}: derivation does not replay"));
        }
    }
    let n = identity_table().len();
    result(
        1,
        "Identity conformance",
        start,
        t.ok(),
        format!("{n} identities over p in {{2,3,5}}, {derived} re-derived with the goal masked, {} failures", t.failures.len()),
        t.failures,
    )
}

/// Core atoms over the given primes with cyclic exponents up to `max_exp`.
pub fn core_atoms(primes: &[u64], max_exp: u32) -> Vec<Atom> {
    let mut atoms = vec![Atom::Real, Atom::Circle, Atom::Solenoid, Atom::Int, Atom::Rat];
    for &p in primes {
        atoms.extend([Atom::PadicInt(p), Atom::PadicRat(p), Atom::Prufer(p)]);
        atoms.extend((1..=max_exp).map(|k| Atom::Cyclic(p, k)));
    }
    atoms
}

/// Every multiset of at most `max_len` atoms, as normalized expressions.
pub fn all_expressions(atoms: &[Atom], max_len: usize) -> Vec<GroupExpr> {
    fn go(atoms: &[Atom], from: usize, left: usize, cur: &mut Vec<Atom>, out: &mut Vec<GroupExpr>) {
        out.push(GroupExpr::from_atoms(cur.iter().copied()).expect("valid atoms"));
        if left == 0 {
            return;
        }
        for i in from..atoms.len() {
            cur.push(atoms[i]);
            go(atoms, i, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(atoms, 0, max_len, &mut Vec::new(), &mut out);
    out
}

pub fn injectivity_equivalence(engine: &Engine) -> CriterionResult {
    let start = Instant::now();
    let mut t = Tally::new();
    let lcpab: CategoryTag = "LCPAb".parse().expect("tag");
    let circle: Operand = Atom::Circle.into();
    let mut unresolved = 0;
    let exprs = all_expressions(&core_atoms(&[2, 3, 5], 3), 4);
    for g in &exprs {
        let inj = classify_injective(&g.clone().into(), lcpab).map(|v| v.holds);
        let ext = engine.ext(&circle, &g.clone().into()).value;
        match (inj, &ext) {
            (Err(e), _) => t.check(false, || format!("{}: {e}", g.ascii())),
            (Ok(inj), HomExtValue::Unresolved { .. }) => {
                unresolved += 1;
                t.check(!inj, || format!("{}: injective but Ext(T, -) unresolved", g.ascii()));
            }
            (Ok(inj), v) => t.check(inj == v.is_zero(), || {
                format!("{}: injective = {inj} but Ext(T, -) = {}", g.ascii(), v.ascii())
            }),
        }
    }
    result(
        2,
        "Injectivity criterion",
        start,
        t.ok(),
        format!(
            "{} expressions, {} agree, {unresolved} with unresolved Ext(T, -) all non-injective",
            exprs.len(),
            t.checked - t.failures.len()
        ),
        t.failures,
    )
}

fn random_expr(rng: &mut ChaCha8Rng, atoms: &[Atom], max_len: usize) -> GroupExpr {
    let n = rng.gen_range(0..=max_len);
    GroupExpr::from_atoms((0..n).map(|_| *atoms.choose(rng).expect("nonempty"))).expect("valid atoms")
}

pub fn duality(engine: &Engine, seed: u64) -> CriterionResult {
    let start = Instant::now();
    let mut t = Tally::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let atoms = core_atoms(&[2, 3, 5, 7], 4);
    for _ in 0..10_000 {
        let a = random_expr(&mut rng, &atoms, 6);
        let b = random_expr(&mut rng, &atoms, 6);
        let (da, db) = (dual(&a).expect("core"), dual(&b).expect("core"));
        t.check(dual(&da).expect("core") == a, || format!("dual is not an involution on {}", a.ascii()));
        t.check(dual(&a.direct_sum(&b)).expect("core") == da.direct_sum(&db), || {
            format!("dual not additive on {} + {}", a.ascii(), b.ascii())
        });
    }
    let random_checks = t.checked;
    let mut compared = 0;
    let atoms = core_atoms(&[2, 3, 5], 3);
    for &a in &atoms {
        for &b in &atoms {
            let x = engine.ext(&a.into(), &b.into()).value;
            let y = engine.ext(&dual(&b.into()).expect("core").into(), &dual(&a.into()).expect("core").into()).value;
            if x.is_resolved() && y.is_resolved() {
                compared += 1;
                t.check(x == y, || {
                    format!("Ext({}, {}) = {} but the transpose gives {}", a.ascii(), b.ascii(), x.ascii(), y.ascii())
                });
            }
        }
    }
    result(
        3,
        "Duality",
        start,
        t.ok(),
        format!(
            "{random_checks} random involution/additivity checks, {compared} of {} core atom pairs compared under transposition",
            atoms.len() * atoms.len()
        ),
        t.failures,
    )
}

/// Every finite abelian group of order at most `bound`.
pub fn finite_groups(bound: u64) -> Vec<FinAb> {
    fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
        if n == 0 {
            return vec![Vec::new()];
        }
        (1..=n.min(max))
            .rev()
            .flat_map(|k| {
                partitions(n - k, k).into_iter().map(move |mut rest| {
                    rest.insert(0, k);
                    rest
                })
            })
            .collect()
    }
    let mut out = Vec::new();
    for n in 1..=bound {
        let mut choices: Vec<Vec<u64>> = vec![Vec::new()];
        for (p, e) in factorize(n) {
            choices = choices
                .into_iter()
                .flat_map(|c| {
                    partitions(e, e).into_iter().map(move |part| {
                        let mut c = c.clone();
                        c.extend(part.iter().map(|&k| p.pow(k)));
                        c
                    })
                })
                .collect();
        }
        out.extend(choices.into_iter().map(FinAb::new));
    }
    out
}

pub fn oracle_triangulation(engine: &Engine) -> CriterionResult {
    let start = Instant::now();
    let mut t = Tally::new();
    let groups = finite_groups(MAX_GROUP_ORDER);
    let (mut symbolic, mut cocycle, mut exhaustive) = (0, 0, 0);
    for g in &groups {
        let mut solver = CocycleSolver::new(g);
        for a in &groups {
            let formula = ext_finite(g, a);
            let sym = engine.ext(&g.to_expr().into(), &a.to_expr().into()).value;
            symbolic += 1;
            t.check(sym == HomExtValue::Expr(formula.to_expr()), || {
                format!("Ext({}, {}): engine {} vs formula {}", g, a, sym.ascii(), formula)
            });
            let product = g.order() * a.order();
            if product <= EXHAUSTIVE_BOUND {
                let r = crosscheck(g, a);
                exhaustive += 1;
                cocycle += 1;
                t.check(r.agrees() && r.exhaustive.is_some(), || format!("Ext({g}, {a}): {}", r.mismatches.join("; ")));
            } else if product <= MAX_PRODUCT_ORDER {
                cocycle += 1;
                match solver.as_mut().map_err(|e| e.clone()).and_then(|s| s.modules(a)) {
                    Ok(m) => t.check(
                        m.quotient == formula && m.cocycles.order_exponents() == m.coboundaries.direct_sum(&m.quotient).order_exponents(),
                        || format!("Ext({g}, {a}): cocycle quotient {} vs formula {formula}", m.quotient),
                    ),
                    Err(e) => t.check(false, || format!("Ext({g}, {a}): {e}")),
                }
            }
        }
    }
    result(
        4,
        "Oracle triangulation",
        start,
        t.ok(),
        format!(
            "{} groups of order <= {MAX_GROUP_ORDER}: {symbolic} symbolic/formula pairs, {cocycle} cocycle quotients, {exhaustive} exhaustive enumerations",
            groups.len()
        ),
        t.failures,
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Question {
    Injective,
    Projective,
}

/// The hand-encoded classification matrix of criterion 5:
/// `(object, category, question, expected, citation)`.
pub const CLASSIFICATION_TABLE: [(&str, &str, Question, bool, &str); 40] = {
    use Question::{Injective as I, Projective as P};
    [
        ("R+T", "LCPAb", I, true, "INJ-VT"),
        ("R+T^w", "LCPAb", I, true, "INJ-VT"),
        ("Z", "LCPAb", I, false, "INJ-VT"),
        ("Sol", "LCPAb", I, false, "INJ-VT"),
        ("T^2", "LCPAb_cg", I, true, "INJ-VT"),
        ("R^2", "LieAb", I, true, "INJ-VT"),
        ("Pr(3)+Q", "TDLCPAb", I, true, "INJ-COUNTABLE-DIVISIBLE"),
        ("Zp(2)", "TDLCPAb", I, false, "INJ-COUNTABLE-DIVISIBLE"),
        ("Qp(5)", "TDLCPAb", I, false, "INJ-COUNTABLE-DIVISIBLE"),
        ("Pr(2)+Pr(3)", "TorLCPAb", I, true, "INJ-COUNTABLE-DIVISIBLE"),
        ("C(4)", "TorLCPAb", I, false, "INJ-COUNTABLE-DIVISIBLE"),
        ("Pr(2)", "LCPAb_p(2)", I, true, "INJ-COUNTABLE-DIVISIBLE"),
        ("Qp(2)", "LCPAb_p(2)", I, false, "INJ-COUNTABLE-DIVISIBLE"),
        ("Qp(2)+Pr(2)", "FLCPAb_p(2)", I, true, "INJ-FINITE-RANK-DIVISIBLE"),
        ("Zp(2)", "FLCPAb_p(2)", I, false, "INJ-FINITE-RANK-DIVISIBLE"),
        ("Qp(5)+Pr(5)", "TorFLCPAb", I, true, "INJ-FINITE-RANK-DIVISIBLE"),
        ("Zp(3)+Pr(5)", "TorFLCPAb", I, false, "INJ-FINITE-RANK-DIVISIBLE"),
        ("R", "LH(LCPAb)", I, false, "HEART-NO-INJ-1"),
        ("0", "LH(LCPAb)", I, true, "HEART-NO-INJ-1"),
        ("T", "LH(LCPAb_cg)", I, false, "HEART-NO-INJ-2"),
        ("R+T", "LH(FLCPAb)", I, false, "HEART-NO-INJ-3"),
        ("T", "LH(LieAb)", I, false, "HEART-NO-INJ-4"),
        ("Pr(3)", "LH(TDLCPAb)", I, false, "HEART-NO-INJ-5"),
        ("Pr(2)+Pr(3)", "LH(TorLCPAb)", I, false, "HEART-NO-INJ-6"),
        ("Pr(2)", "LH(LCPAb_p(2))", I, false, "HEART-NO-INJ-7"),
        ("Xi(2)", "LH(TDLCPAb)", I, false, "HEART-NO-INJ-5"),
        ("R+Z+Z", "LH(LCPAb)", P, true, "PROJ-1"),
        ("R+Z", "LH(LCPAb_cg)", P, true, "PROJ-1"),
        ("Z^3", "LH(LieAb)", P, true, "PROJ-1"),
        ("T", "LCPAb", P, false, "PROJ-1"),
        ("Q", "LH(LCPAb)", P, false, "PROJ-1"),
        ("Z+Z", "LH(TDLCPAb)", P, true, "PROJ-2"),
        ("Q", "LH(TDLCPAb)", P, false, "PROJ-2"),
        ("Zp(2)+Zp(3)", "LH(TorLCPAb)", P, true, "PROJ-3"),
        ("PC(2)", "LH(TorLCPAb)", P, false, "PROJ-3"),
        ("Zp(3)", "LH(LCPAb_p(3))", P, true, "PROJ-4"),
        ("C(3)", "LH(LCPAb_p(3))", P, false, "PROJ-4"),
        ("Zp(2)+Qp(2)", "FLCPAb_p(2)", P, true, "PROJ-5"),
        ("Pr(2)", "FLCPAb_p(2)", P, false, "PROJ-5"),
        ("Zp(2)+Qp(5)", "TorFLCPAb", P, true, "PROJ-6"),
    ]
};

pub fn classification_tables() -> CriterionResult {
    let start = Instant::now();
    let mut t = Tally::new();
    for (obj, cat, q, expected, cite) in CLASSIFICATION_TABLE {
        let o = op(obj);
        let tag = parse_category(cat).expect("table categories parse");
        let got: Result<bool, ClassifyError> = match q {
            Question::Injective => classify_injective(&o, tag).map(|v| v.holds),
            Question::Projective => classify_projective(&o, tag).map(|v| v.holds),
        };
        t.check(got.as_ref() == Ok(&expected), || format!("{cite}: {q:?} {obj} in {cat}: expected {expected}, got {got:?}"));
    }
    let n = CLASSIFICATION_TABLE.len();
    result(5, "Classification tables", start, t.ok(), format!("{} of {n} rows match", n - t.failures.len()), t.failures)
}

pub fn resolutions() -> CriterionResult {
    let start = Instant::now();
    let mut t = Tally::new();
    let mut supported = vec![Atom::Int, Atom::Rat, Atom::Real, Atom::Circle, Atom::OmegaTorus];
    let mut truncations = 0;
    for p in [2u64, 3, 5] {
        supported.extend([Atom::Prufer(p), Atom::PadicInt(p)]);
        supported.extend((1..=3).map(|k| Atom::Cyclic(p, k)));
    }
    for &a in &supported {
        match resolve(&a.into()) {
            Ok(r) => {
                t.check(is_essentially_injective(&r.d0) && is_essentially_injective(&r.d1), || {
                    format!("{}: d0 = {}, d1 = {} not both essentially injective", a.ascii(), r.d0.ascii(), r.d1.ascii())
                });
                if let Atom::Cyclic(p, k) = a {
                    for m in 1..=2 {
                        truncations += 1;
                        t.check(cyclic_truncation_exact(p, k, m), || format!("truncation ({p}, {k}, {m}) not exact"));
                    }
                }
            }
            Err(e) => t.check(false, || format!("{}: {e}", a.ascii())),
        }
    }
    for a in [Atom::PadicRat(2), Atom::Solenoid, Atom::OmegaProd(2), Atom::OmegaSum(3)] {
        t.check(matches!(resolve(&a.into()), Err(ClassifyError::ResolutionUnsupported(_))), || {
            format!("{} should be reported unsupported", a.ascii())
        });
    }
    result(
        6,
        "Resolutions",
        start,
        t.ok(),
        format!("{} supported atoms resolved in length one, {truncations} truncations exact", supported.len()),
        t.failures,
    )
}

/// The spot matrix of criterion 7.
pub const COUNTABILITY_TABLE: [(&str, &str, Countable); 20] = {
    use Countable::{No, Unknown, Yes};
    [
        ("SC(2)", "C(2)", No),
        ("SC(3)", "C(3)", No),
        ("SC(5)", "C(5)", No),
        ("Sol", "Q", Yes),
        ("C(8)", "Z", Yes),
        ("Pr(2)", "C(2)", Yes),
        ("C(4)", "C(2)", Yes),
        ("Pr(2)+C(4)", "C(2)", Yes),
        ("T", "Z", Yes),
        ("T", "Q", Yes),
        ("Pr(2)", "Z", No),
        ("Q", "Z", No),
        ("SC(2)", "Z", No),
        ("Z^2+C(6)", "Z", Yes),
        ("Zp(2)", "Q", Yes),
        ("PC(2)", "Z", Yes),
        ("Sol", "Z", Yes),
        ("T^w", "Z", Unknown),
        ("Xi(2)", "T", No),
        ("Qp(2)", "Zp(2)", Yes),
    ]
};

pub fn countability(engine: &Engine) -> CriterionResult {
    let start = Instant::now();
    let mut t = Tally::new();
    for (a, b, expected) in COUNTABILITY_TABLE {
        let got = engine.ext_countable(&op(a), &op(b));
        t.check(got.verdict == expected, || {
            format!("Ext({a}, {b}): expected {expected}, got {} by {}", got.verdict, got.rule)
        });
    }
    let mut resolved = 0;
    let universe = audit_universe();
    for x in &universe {
        for y in &universe {
            let (a, b) = (x.to_operand(), y.to_operand());
            let ans = engine.ext_countable(&a, &b);
            let expect = match engine.ext(&a, &b).value {
                HomExtValue::Expr(g) => Some(properties(&g).countable),
                HomExtValue::Cover(c) => Some(properties(&c.presentation().0).countable),
                HomExtValue::Unresolved { .. } => None,
            };
            if let Some(countable) = expect {
                resolved += 1;
                let want = if countable { Countable::Yes } else { Countable::No };
                t.check(ans.verdict == want, || {
                    format!("Ext({}, {}) resolved but verdict is {}", x.ascii(), y.ascii(), ans.verdict)
                });
            }
        }
    }
    result(
        7,
        "Countability reasoner",
        start,
        t.ok(),
        format!(
            "{} spot cases, {resolved} resolved pairs checked for agreement with the value",
            COUNTABILITY_TABLE.len()
        ),
        t.failures,
    )
}

/// Consistent six-slot sequences whose unknown slots each sit between two
/// nonzero known slots.
pub fn ambiguous_sequences(seed: u64, count: usize) -> Vec<SixTermSeq> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values: Vec<Operand> = ["Z", "Q", "Zp(2)", "C(4)", "Pr(3)", "R", "Xi(2)", "T+Z"].iter().map(|s| op(s)).collect();
    let zero: Operand = GroupExpr::zero().into();
    let mut out = Vec::new();
    while out.len() < count {
        let mut vals: Vec<Option<Operand>> = (0..6)
            .map(|_| if rng.gen_bool(0.3) { Some(zero.clone()) } else { Some(values.choose(&mut rng).expect("nonempty").clone()) })
            .collect();
        let holes: Vec<usize> = (1..5).filter(|_| rng.gen_bool(0.5)).collect();
        for &h in &holes {
            vals[h] = None;
        }
        let flanked = !holes.is_empty()
            && holes.iter().all(|&h| {
                [h - 1, h + 1].iter().all(|&j| matches!(&vals[j], Some(v) if !v.is_zero()))
            });
        if !flanked {
            continue;
        }
        let coker = if rng.gen_bool(0.3) && matches!(&vals[4], Some(v) if !v.is_zero()) {
            vec![CokerFact {
                from: 1,
                value: values.choose(&mut rng).expect("nonempty").clone(),
                citation: Citation { id: "ADVERSARIAL".into(), provenance: Provenance::Derived },
            }]
        } else {
            Vec::new()
        };
        let slots = vals
            .into_iter()
            .enumerate()
            .map(|(i, v)| Slot {
                functor: if i < 3 { Functor::Hom } else { Functor::Ext },
                left: zero.clone(),
                right: zero.clone(),
                value: v,
                rules: Vec::new(),
                citations: Vec::new(),
            })
            .collect();
        let s = SixTermSeq { label: format!("adversarial {}", out.len()), slots, coker };
        if solve_les(&s).is_ok() {
            out.push(s);
        }
    }
    out
}

pub fn hygiene(engine: &Engine, seed: u64) -> CriterionResult {
    let start = Instant::now();
    let mut t = Tally::new();
    let audit = engine.audit_report();
    t.check(audit.disagreements.is_empty(), || format!("audit: {}", audit.disagreements.join("; ")));
    let seqs = ambiguous_sequences(seed, 50);
    for s in &seqs {
        let assigned = solve_les(s).unwrap_or_default();
        t.check(assigned.is_empty(), || format!("{}: solver assigned {assigned:?}", s.render()));
    }
    let mut unresolved = 0;
    let universe = audit_universe();
    for f in [Functor::Hom, Functor::Ext] {
        for x in &universe {
            for y in &universe {
                let ans = engine.query(f, &x.to_operand(), &y.to_operand());
                if let HomExtValue::Unresolved { rule_trace, .. } = &ans.value {
                    unresolved += 1;
                    t.check(!rule_trace.is_empty() && !ans.trace.is_empty(), || {
                        format!("{f}({}, {}) unresolved with an empty trace", x.ascii(), y.ascii())
                    });
                }
            }
        }
    }
    result(
        8,
        "Engine hygiene",
        start,
        t.ok(),
        format!(
            "audit checked {} pairs with {} rule applications and {} disagreements; {} ambiguous sequences left alone; {unresolved} unresolved answers all traced",
            audit.pairs_checked,
            audit.applications,
            audit.disagreements.len(),
            seqs.len()
        ),
        t.failures,
    )
}
