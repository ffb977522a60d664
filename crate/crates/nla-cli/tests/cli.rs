//! End-to-end tests of the `nla` binary: exit codes, output formats, and
//! determinism of the verification report.

use std::path::PathBuf;
use std::process::{Command, Output};

fn nla(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nla"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf8 stdout")
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("utf8 stderr")
}

/// Writes `body` to a temp file unique to this test and returns its path.
fn temp_input(name: &str, body: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("nla-cli-{}-{name}.json", std::process::id()));
    std::fs::write(&path, body).expect("temp file writes");
    path
}

const PAIR_MATRIX: &str = r#"{
  "matrix": [
    [{"rat": "-1"}, {"rat": "1"}],
    [{"rat": "1"}, {"zeta": [1, 3]}]
  ]
}"#;

const A2_PRESET: &str = r#"{ "preset": { "type": "A", "n": 2, "q": {"zeta": [1, 3]} } }"#;

#[test]
fn unknown_suite_exits_with_usage_error() {
    let out = nla(&["verify", "no-such-suite"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("no-such-suite"), "stderr names the bad suite: {err}");
    assert!(err.contains("examples"), "stderr lists known suites: {err}");
}

#[test]
fn unknown_flag_exits_with_usage_error() {
    let out = nla(&["nichols", "hilbert", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn examples_suite_passes_and_is_byte_deterministic() {
    let first = nla(&["verify", "examples", "--output", "json"]);
    assert_eq!(first.status.code(), Some(0), "stderr: {}", stderr(&first));
    let second = nla(&["verify", "examples", "--output", "json"]);
    assert_eq!(first.stdout, second.stdout, "reports differ between runs");

    let report: serde_json::Value = serde_json::from_str(&stdout(&first)).expect("json report");
    assert_eq!(report["failed"], 0);
    assert_eq!(report["report_version"], 1);
    assert_eq!(report["suites"][0]["suite"], "examples");
}

#[test]
fn hilbert_reports_graded_dims_for_a_matrix_input() {
    let input = temp_input("pair", PAIR_MATRIX);
    let out = nla(&[
        "nichols",
        "hilbert",
        "--input",
        input.to_str().unwrap(),
        "--max-degree",
        "6",
        "--output",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert_eq!(v["dims"], serde_json::json!([1, 2, 2, 1, 0, 0, 0]));
    assert_eq!(v["total"]["finite"], 6);
}

#[test]
fn normal_form_accepts_a_bare_word() {
    let input = temp_input("nf", PAIR_MATRIX);
    let out = nla(&["nichols", "nf", "--input", input.to_str().unwrap(), "--element", "11"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("normal form: 0"), "x1^2 vanishes: {}", stdout(&out));
}

#[test]
fn preset_input_builds_the_expected_algebra() {
    let input = temp_input("preset", A2_PRESET);
    let out = nla(&[
        "nichols",
        "hilbert",
        "--input",
        input.to_str().unwrap(),
        "--max-degree",
        "9",
        "--output",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert_eq!(v["total"]["finite"], 27);
}

#[test]
fn diagram_emits_dot_with_vertex_labels() {
    let input = temp_input("dot", A2_PRESET);
    let out = nla(&["diagram", "--input", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let dot = stdout(&out);
    assert!(dot.contains("graph"), "DOT header present: {dot}");
    assert!(dot.contains("z3^1"), "vertex scalar labeled: {dot}");
}

#[test]
fn malformed_input_file_exits_with_usage_error() {
    let input = temp_input("bad", "{ not json");
    let out = nla(&["nichols", "hilbert", "--input", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 1"), "parse location reported: {}", stderr(&out));
}

#[test]
fn closed_form_bound_prints_the_expected_value() {
    let out = nla(&["bound", "--type", "A", "--n", "2", "--N", "3", "--case", "2"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("lower bound: 5"), "got {}", stdout(&out));

    let inf = nla(&["bound", "--type", "path-two", "--n", "2", "--orders", "inf,3"]);
    assert_eq!(inf.status.code(), Some(0));
    assert!(stdout(&inf).contains("infinite"), "got {}", stdout(&inf));
}
