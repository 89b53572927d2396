use std::process::Command;

use nkflag_cli::{emit, run, Format, Report, Status, Suite, SuiteSpec};
use serde_json::Value;

const SMALL_GRID: &str = "1/2:1:1/2,-1:1:1";

fn spec(suite: Suite) -> SuiteSpec {
    let mut s = SuiteSpec::new(suite);
    s.samples = 10;
    s.grid = SMALL_GRID.parse().unwrap();
    s
}

fn json(report: &Report) -> Value {
    serde_json::from_slice(&emit(report, Format::Json)).unwrap()
}

fn nkflag(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_nkflag")).args(args).output().unwrap()
}

#[test]
fn same_seed_same_json_modulo_elapsed() {
    for suite in [Suite::Field, Suite::Algebra, Suite::Examples] {
        let mut a = run(&spec(suite)).unwrap();
        let mut b = run(&spec(suite)).unwrap();
        a.elapsed_ms = 0;
        b.elapsed_ms = 0;
        assert_eq!(emit(&a, Format::Json), emit(&b, Format::Json), "{suite}");
    }
}

#[test]
fn empty_report_is_valid_json() {
    let out = emit(&Report::empty("field", 7), Format::Json);
    assert_eq!(out.last(), Some(&b'\n'));
    let v: Value = serde_json::from_slice(&out).unwrap();
    assert_eq!(v["checks"], Value::Array(vec![]));
    assert_eq!(v["totals"]["total"], 0);
}

#[test]
fn checks_sorted_and_totals_consistent() {
    let r = run(&spec(Suite::Tensors)).unwrap();
    let names: Vec<_> = r.checks.iter().map(|c| c.name.clone()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert_eq!(r.totals.total, r.checks.len());
    assert_eq!(r.totals.passed + r.totals.failed, r.totals.total);
    assert!(r.checks.iter().all(|c| c.name.starts_with("tensors/") && !c.anchor.is_empty()));
}

#[test]
fn classify_report_has_witness_and_mapping() {
    let r = run(&spec(Suite::Classify)).unwrap();
    assert!(r.passed());
    let case2 = r.checks.iter().find(|c| c.name == "classify/case 2+").unwrap();
    assert_eq!(case2.status, Status::Pass);
    assert!(case2.witness.contains("(-4)e1 + (2)e5"), "{}", case2.witness);
    assert!(case2.witness.contains("not in span"));

    let v = json(&r);
    let mapping = v["details"]["classify.mapping"].as_array().unwrap();
    let pairs: Vec<(String, String)> = mapping
        .iter()
        .map(|m| (m["case"].as_str().unwrap().into(), m["family"].as_str().unwrap().into()))
        .collect();
    let expected = [("1", "f1"), ("3+", "f2"), ("3-", "f3"), ("4", "f4"), ("5", "f5")];
    assert_eq!(
        pairs,
        expected.map(|(c, f)| (c.to_string(), f.to_string())).to_vec()
    );
    // a in {1/2, 1}, b in {-1, 0, 1}, two signs.
    assert_eq!(v["details"]["classify.case4"]["cells"], 12);
}

#[test]
fn structure_constants_table_shape() {
    let v = json(&run(&spec(Suite::Algebra)).unwrap());
    let table = v["details"]["algebra.structure_constants"]["table"].as_array().unwrap();
    assert_eq!(table.len(), 8);
    for row in table {
        let row = row.as_array().unwrap();
        assert_eq!(row.len(), 8);
        assert!(row.iter().all(|c| c.as_array().is_some_and(|c| c.len() == 8 && c.iter().all(Value::is_string))));
    }
}

#[test]
fn curvature_details() {
    let v = json(&run(&spec(Suite::Curvature)).unwrap());
    assert_eq!(v["details"]["curvature.sign_convention"], "CommutatorMinusBracket");
    assert_eq!(v["details"]["curvature.einstein_constant"], "5");
}

#[test]
fn text_ends_with_verdict() {
    let r = run(&spec(Suite::Field)).unwrap();
    let text = String::from_utf8(emit(&r, Format::Text)).unwrap();
    assert!(text.lines().last().unwrap().starts_with("PASS ("));
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS  field/")).count(), r.checks.len());
}

#[test]
fn invalid_spec_rejected() {
    let mut s = spec(Suite::Field);
    s.tol = 0.0;
    assert!(run(&s).is_err());
    let mut s = spec(Suite::Field);
    s.samples = 0;
    assert!(run(&s).is_err());
    assert!("nope".parse::<Suite>().is_err());
    assert!("xml".parse::<Format>().is_err());
}

#[test]
fn exit_code_zero_on_pass() {
    let out = nkflag(&["field", "--samples", "5", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["suite"], "field");
    assert_eq!(v["totals"]["failed"], 0);
}

#[test]
fn exit_code_one_on_failed_check() {
    // No float computation meets a tolerance this small.
    let out = nkflag(&["examples", "--samples", "5", "--tol", "1e-300"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().last().unwrap().starts_with("FAIL"));
}

#[test]
fn exit_code_two_on_usage_error() {
    for args in [
        &["bogus"][..],
        &["field", "--tol", "0"],
        &["field", "--samples", "0"],
        &["classify", "--grid", "1:2"],
        &["field", "--format", "yaml"],
    ] {
        assert_eq!(nkflag(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn out_file_written() {
    let dir = std::env::temp_dir().join(format!("nkflag-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = nkflag(&["field", "--samples", "3", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(v["seed"], 1);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn sequential_matches_parallel() {
    let mut a = spec(Suite::Curvature);
    a.execution = nkflag::par::Execution::Sequential;
    let mut ra = run(&a).unwrap();
    let mut rb = run(&spec(Suite::Curvature)).unwrap();
    ra.elapsed_ms = 0;
    rb.elapsed_ms = 0;
    assert_eq!(ra, rb);
}
