//! End-to-end tests of the `qcalc` binary: exit codes, output formats, schemas.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn qcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcalc")).args(args).output().expect("binary runs")
}

fn repo(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").join(rel)
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

fn validator(schema: &str) -> jsonschema::Validator {
    let schema: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(repo(schema)).unwrap()).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

#[test]
fn relation_suites_pass() {
    let out = qcalc(&["verify", "--suite", "relations/gl"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("== relations/gl\n"));
    assert!(text.contains("summary: 11 pass, 0 fail, 0 flagged"));
}

#[test]
fn flagged_entries_do_not_fail_the_run() {
    let out = qcalc(&["verify", "--suite", "relations/gauss"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("[flagged]"));
}

#[test]
fn failures_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        &dir,
        "bad.json",
        r#"{"suite": "t/bad", "entries": [{"name": "n", "preset": "GLq2", "lhs": "a*b", "rhs": "b*a", "paper_ref": "r"}]}"#,
    );
    let out = qcalc(&["verify", "--suite", "t/*", "--file", &f]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout).unwrap().contains("residual: (q-1)/q*a*b"));
}

#[test]
fn empty_suite_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(&dir, "empty.json", r#"{"suite": "t/empty", "entries": []}"#);
    let out = qcalc(&["verify", "--suite", "t/empty", "--file", &f, "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["suites"][0]["entries"].as_array().unwrap().len(), 0);
    assert_eq!(v["summary"]["pass"], 0);
}

#[test]
fn load_and_usage_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let malformed = write(&dir, "m.json", r#"{"suite": "t/m", "entries": [{"name": "n"}]}"#);
    let cases: Vec<Vec<&str>> = vec![
        vec!["verify", "--suite", "t/*", "--file", &malformed],
        vec!["verify", "--file", "/nonexistent/suite.json"],
        vec!["verify", "--suite", "no/such/*"],
        vec!["verify", "--q", "seven"],
        vec!["verify", "--jobs", "0"],
        vec!["verify", "--format", "yaml"],
        vec!["dump", "suite", "nonexistent"],
        vec!["dump", "preset", "nonexistent"],
        vec!["dump", "derivation", "nonexistent"],
        vec!["frobnicate"],
    ];
    for args in cases {
        assert_eq!(qcalc(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn json_reports_are_byte_identical_and_match_the_schema() {
    let args = ["verify", "--format", "json", "--q", "7/10", "--seed", "3"];
    let a = qcalc(&[&args[..], &["--jobs", "1"]].concat());
    let b = qcalc(&[&args[..], &["--jobs", "4"]].concat());
    assert_eq!(a.stdout, b.stdout);
    let report: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let v = validator("schemas/report.schema.json");
    let errors: Vec<String> = v.iter_errors(&report).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}");
    assert_eq!(report["options"]["q"], "7/10");
}

#[test]
fn timed_report_matches_the_schema() {
    let out = qcalc(&["verify", "--suite", "sigma/*", "--format", "json", "--timings"]);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report["suites"][0]["wall_ms"].is_u64());
    assert!(validator("schemas/report.schema.json").is_valid(&report));
}

#[test]
fn shipped_suites_match_the_schema() {
    let v = validator("schemas/suite.schema.json");
    for entry in std::fs::read_dir(repo("suites/relations")).unwrap() {
        let path = entry.unwrap().path();
        let suite: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let errors: Vec<String> = v.iter_errors(&suite).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{}: {errors:?}", path.display());
    }
    let bad = serde_json::json!({"suite": "x", "entries": [{"name": "n", "preset": "GLq2", "lhs": "a"}]});
    assert!(!v.is_valid(&bad));
}

#[test]
fn report_can_be_written_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.txt");
    let out = qcalc(&["verify", "--suite", "relations/unitary", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert!(std::fs::read_to_string(path).unwrap().contains("== relations/unitary"));
}

#[test]
fn dumps_print_canonical_text() {
    let preset = qcalc(&["dump", "preset", "SLq2R_gauss"]);
    assert_eq!(preset.status.code(), Some(0));
    assert!(String::from_utf8(preset.stdout).unwrap().contains("rho"));

    let suite = qcalc(&["dump", "suite", "relations/gl"]);
    let v: serde_json::Value = serde_json::from_slice(&suite.stdout).unwrap();
    assert_eq!(v["suite"], "relations/gl");

    let density = qcalc(&["dump", "derivation", "wznw_density"]);
    assert_eq!(density.status.code(), Some(0));
    assert!(String::from_utf8(density.stdout).unwrap().contains("(q^6+q^4)*rho^-2*p0_rho^2"));
}
