//! Black box checks of the binary: exit codes, output shapes, and seed
//! determinism.

use std::process::{Command, Output};

fn lamth(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lamth"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn normalize_success() {
    let out = lamth(&["normalize", r"\.x5 (x1 x2 (x4 x3)) [x1,x2,x3,x1] @3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), r"\.x4 (x1 x2 (x1 x3)) @3");
}

#[test]
fn normalize_trace_lines() {
    let out = lamth(&["normalize", r"(\.x1)[f]", "--trace"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let rules: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("rule="))
        .map(|l| l.split_whitespace().next().unwrap())
        .collect();
    assert_eq!(rules, ["rule=subst_abs", "rule=subst_var", "rule=extend_tuple"]);
    assert!(text.contains("steps: 3 raw, 2 folded"));
    assert!(text.trim_end().ends_with(r"\.f @0"));
}

#[test]
fn normalize_already_normal_is_empty_trace() {
    let out = lamth(&["normalize", "x1 x2 @2", "--trace"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("steps: 0 raw, 0 folded"));
}

#[test]
fn parse_error_is_exit_1() {
    let out = lamth(&["normalize", "(("]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
}

#[test]
fn fuel_exhaustion_is_exit_2() {
    let out = lamth(&["normalize", r"(\.x1 x1)(\.x1 x1)", "--fuel", "50"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn law_failure_is_exit_3_with_counterexample() {
    let out = lamth(&["laws", "broken"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("counterexample"));
}

#[test]
fn unknown_suite_is_exit_1() {
    let out = lamth(&["laws", "nonsense"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn exhaustive_theory_suite_passes() {
    let out = lamth(&["laws", "theory", "--theory", "free:a,b"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn json_reports_are_seed_deterministic() {
    let args = ["srt", "hyland", "--samples", "5", "--seed", "42", "--json"];
    let a = lamth(&args);
    let b = lamth(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(parsed["all_pass"], serde_json::Value::Bool(true));
}

#[test]
fn trace_json_shape() {
    let out = lamth(&["normalize", r"(\.x1)[f]", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["initial"], r"(\.x1)[f] @0");
    assert_eq!(v["final"], r"\.f @0");
    assert_eq!(v["steps"].as_array().unwrap().len(), 3);
    assert_eq!(v["steps"][0]["rule"], "subst_abs");
    assert_eq!(v["exhausted"], false);
}

#[test]
fn srt_single_scope_flag() {
    let out = lamth(&["srt", "scott", "-n", "1", "--samples", "5", "--fuel", "40000"]);
    assert_eq!(out.status.code(), Some(0));
}
