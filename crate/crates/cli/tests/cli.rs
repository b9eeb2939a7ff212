use std::io::Write;
use std::process::{Command, Output};

use lcacalc_core::homext::FactBase;
use serde_json::Value;

fn lcacalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lcacalc")).args(args).output().expect("binary runs")
}

fn structured(args: &[&str]) -> (Value, i32) {
    let mut full = vec!["--format", "structured"];
    full.extend_from_slice(args);
    let out = lcacalc(&full);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout));
    });
    (v, out.status.code().expect("exit code"))
}

fn fact_file(contents: &str) -> tempfile_path::TempFile {
    tempfile_path::TempFile::new(contents)
}

/// Minimal self-deleting temporary file.
mod tempfile_path {
    use std::path::PathBuf;

    pub struct TempFile(pub PathBuf);

    impl TempFile {
        pub fn new(contents: &str) -> Self {
            use std::sync::atomic::{AtomicUsize, Ordering};
            static N: AtomicUsize = AtomicUsize::new(0);
            let name = format!("lcacalc-test-{}-{}.tsv", std::process::id(), N.fetch_add(1, Ordering::SeqCst));
            let path = std::env::temp_dir().join(name);
            let mut f = std::fs::File::create(&path).expect("temp file");
            super::Write::write_all(&mut f, contents.as_bytes()).expect("write");
            TempFile(path)
        }

        pub fn arg(&self) -> &str {
            self.0.to_str().expect("utf-8 path")
        }
    }

    impl Drop for TempFile {
        fn drop(&mut self) {
            let _ = std::fs::remove_file(&self.0);
        }
    }
}

const BUILTIN: &str = include_str!("../../core/data/facts.tsv");

#[test]
fn ext_of_prufer_by_padic_cites_its_fact() {
    let (v, code) = structured(&["ext", "Pr(2)", ",", "Zp(2)"]);
    assert_eq!(code, 0);
    assert_eq!(v["kind"], "expr");
    assert_eq!(v["value"], "Zp(2)");
    let cites = v["citations"].as_array().unwrap();
    assert!(cites.iter().any(|c| c["id"] == "EXT-PRUFER-1" && c["provenance"] == "PAPER"), "{v}");
    assert!(v["trace"].as_array().unwrap().iter().any(|t| t["rule"] == "E5-FACT"));
}

#[test]
fn vector_plus_torus_is_injective() {
    let (v, code) = structured(&["injective", "R+T", "LCPAb"]);
    assert_eq!(code, 0);
    assert_eq!(v["kind"], "boolean");
    assert_eq!(v["value"], "true");
    assert_eq!(v["trace"][0]["detail"], "V⊕T form");
}

#[test]
fn ext_of_rationals_by_integers_is_unresolved() {
    let (v, code) = structured(&["ext", "Q", ",", "Z"]);
    assert_eq!(code, 0);
    assert_eq!(v["kind"], "unresolved");
    assert!(!v["trace"].as_array().unwrap().is_empty());
}

#[test]
fn query_echo_is_normalized() {
    let (v, _) = structured(&["ext", "R^2+C(6)", ",", "Zp(2)"]);
    assert_eq!(v["query"], "ext R^2+C(2)+C(3) , Zp(2)");
    assert_eq!(v["value"], "C(2)");
}

#[test]
fn heart_queries_parse_category_last() {
    let (v, code) = structured(&["injective", "Pr(3)+Q", "LH(TDLCPAb)"]);
    assert_eq!(code, 0);
    assert_eq!(v["query"], "injective Q+Pr(3) LH(TDLCPAb)");
    assert_eq!(v["value"], "false");
}

#[test]
fn parse_errors_exit_one_with_position() {
    let (v, code) = structured(&["ext", "T", ",", "Foo"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["code"], "E-UNKNOWN-ATOM");
    assert!(v["error"]["message"].as_str().unwrap().contains("at 8"));
    assert_eq!(lcacalc(&["member", "Z", "Top"]).status.code(), Some(1));
    assert_eq!(lcacalc(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(lcacalc(&["--no-such-flag", "dual", "Z"]).status.code(), Some(1));
}

#[test]
fn flags_after_the_query_are_part_of_it() {
    assert_eq!(lcacalc(&["dual", "Z", "--format", "structured"]).status.code(), Some(1));
}

#[test]
fn engine_errors_exit_two() {
    let (v, code) = structured(&["dual", "T^w"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["code"], "E-DUALITY");
    let (v, code) = structured(&["resolve", "Qp(2)"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["code"], "E-RESOLUTION-UNSUPPORTED");
}

#[test]
fn corrupted_fact_fails_the_startup_audit() {
    let bad = BUILTIN.replace("Ext\tPr(p)\tZp(p)\tZp(p)", "Ext\tPr(p)\tZp(p)\tZ");
    assert_ne!(bad, BUILTIN);
    let f = fact_file(&bad);
    let out = lcacalc(&["--facts", f.arg(), "selftest"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("E-AUDIT") && err.contains("EXT-PRUFER-1"), "{err}");
}

#[test]
fn malformed_fact_file_is_an_engine_error() {
    let f = fact_file("Ext\tPr(p)\tZp(p)\n");
    let (v, code) = structured(&["--facts", f.arg(), "ext", "Z", ",", "Z"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["code"], "E-FACTS");
}

#[test]
fn empty_fact_base_fails_conformance() {
    let f = fact_file("");
    let (v, code) = structured(&["--facts", f.arg(), "selftest"]);
    assert_eq!(code, 3);
    assert_eq!(v["kind"], "report");
    assert_eq!(v["value"]["criteria"][0]["passed"], false);
    assert!(v["value"]["unresolved"].as_str().unwrap().contains("atom pairs"));
}

#[test]
fn fresh_selftest_passes() {
    let out = lcacalc(&["selftest"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.contains("passed: 8/8"), "{text}");
}

#[test]
fn output_is_deterministic() {
    for q in [
        &["derive", "ext", "Pr(3)", ",", "Zp(3)"][..],
        &["ext", "Sol+C(8)", ",", "Z+Pr(2)"],
        &["oracle-ext", "C(4)+C(2)", ",", "C(8)"],
        &["props", "Zp(2)+R"],
    ] {
        let a = lcacalc(&[&["--format", "structured"], q].concat());
        let b = lcacalc(&[&["--format", "structured"], q].concat());
        assert_eq!(a.stdout, b.stdout, "{q:?}");
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn citations_come_from_the_fact_base() {
    let facts = FactBase::builtin();
    for q in [
        &["ext", "Pr(2)", ",", "Zp(2)"][..],
        &["hom", "Zp(3)", ",", "Zp(3)"],
        &["derive", "ext", "T", ",", "Z"],
        &["ext", "Xi(2)", ",", "Pr(2)"],
        &["extq", "Sol", ",", "Z"],
    ] {
        let (v, code) = structured(q);
        assert_eq!(code, 0, "{q:?}");
        for c in v["citations"].as_array().unwrap() {
            assert!(facts.contains_id(c["id"].as_str().unwrap()), "{q:?}: {c}");
        }
    }
}

#[test]
fn derive_reports_the_sequence_and_solver_steps() {
    let (v, code) = structured(&["derive", "ext", "T", ",", "Z"]);
    assert_eq!(code, 0);
    assert_eq!(v["value"], "Z");
    let trace = v["trace"].as_array().unwrap();
    assert_eq!(trace[0]["rule"], "SEQUENCE");
    assert_eq!(trace[0]["subject"], "Z -> R -> T");
    assert!(trace.iter().any(|t| t["rule"] == "LES-SOLVE"));
    let (v, _) = structured(&["derive", "ext", "R", ",", "R"]);
    assert_eq!(v["value"], "0");
    assert!(v["trace"].as_array().unwrap().iter().all(|t| t["rule"] != "SEQUENCE"));
}

#[test]
fn depth_zero_blocks_sequence_derivations() {
    let (v, code) = structured(&["--depth", "0", "derive", "ext", "T", ",", "Z"]);
    assert_eq!(code, 0);
    assert_eq!(v["kind"], "unresolved");
}

#[test]
fn rules_can_be_listed_and_disabled() {
    let (v, _) = structured(&["rules"]);
    let ids: Vec<&str> = v["value"].as_array().unwrap().iter().map(|r| r["id"].as_str().unwrap()).collect();
    assert!(ids.contains(&"E5-FACT") && ids.contains(&"R5-TRANSPOSE"));
    let (v, code) = structured(&["--disable-rule", "E5-FACT", "rules"]);
    assert_eq!(code, 0);
    assert!(v["value"].as_array().unwrap().iter().all(|r| r["id"] != "E5-FACT"));
    let (v, code) = structured(&["--disable-rule", "E5-FACT", "ext", "Pr(2)", ",", "Zp(2)"]);
    assert_eq!(code, 0);
    assert_eq!(v["kind"], "unresolved");
    assert!(v["citations"].as_array().unwrap().is_empty());
    assert_eq!(lcacalc(&["--disable-rule", "NOPE", "rules"]).status.code(), Some(1));
}

#[test]
fn countability_and_oracle_commands() {
    let (v, _) = structured(&["extq", "SC(2)", ",", "C(2)"]);
    assert_eq!(v["value"], "no");
    let (v, _) = structured(&["oracle-ext", "C(2)", ",", "C(2)"]);
    assert_eq!(v["value"], "C(2)");
    assert!(v["trace"].as_array().unwrap().iter().any(|t| t["rule"] == "EXHAUSTIVE"
        && t["detail"].as_str().unwrap().ends_with("2 classes")));
    let (v, code) = structured(&["oracle-ext", "Z", ",", "C(2)"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["code"], "E-NOT-FINITE");
}

#[test]
fn text_output_shows_unicode_rendering() {
    let out = lcacalc(&["ext", "Pr(2)", ",", "Zp(2)"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("value: Zp(2)\n"), "{text}");
    assert!(text.contains("display: ℤ_2\n"), "{text}");
    assert!(text.contains("EXT-PRUFER-1 [PAPER]"), "{text}");
}
