//! Runner behaviour: selection, evaluation modes, numeric cross-checks, determinism.

use num_rational::BigRational;
use qcalc::expr_io::suite::SuiteFile;
use qcalc::report::Status;
use qcalc::runner::{self, Options};
use qcalc::LoadError;

fn file(json: &str) -> SuiteFile {
    SuiteFile::from_json(json, "test").unwrap()
}

fn run_one(f: SuiteFile, opts: &Options) -> qcalc::report::Report {
    let name = f.suite.clone();
    let suites = runner::select(runner::catalogue(vec![f]).unwrap(), &name).unwrap();
    runner::run(&suites, opts)
}

#[test]
fn glob_selects_by_prefix() {
    let all = runner::catalogue(Vec::new()).unwrap();
    let rel = runner::select(all.clone(), "relations/*").unwrap();
    assert!(rel.len() >= 10 && rel.iter().all(|s| s.name.starts_with("relations/")));
    assert!(matches!(runner::select(all.clone(), "nothing/*"), Err(LoadError::UnknownSuite(_))));
    assert!(matches!(runner::select(all, "[bad"), Err(LoadError::Glob(_))));
}

#[test]
fn empty_suite_gives_empty_report() {
    let r = run_one(file(r#"{"suite": "t/empty", "entries": []}"#), &Options::default());
    assert_eq!(r.suites.len(), 1);
    assert!(r.suites[0].entries.is_empty());
    assert!(!r.failed());
}

#[test]
fn duplicate_suite_name_is_rejected() {
    let f = file(r#"{"suite": "relations/gl", "entries": []}"#);
    assert!(matches!(runner::catalogue(vec![f]), Err(LoadError::Malformed { .. })));
}

#[test]
fn true_false_and_flagged_entries() {
    let f = file(
        r#"{"suite": "t/mixed", "entries": [
            {"name": "true", "preset": "GLq2", "lhs": "a*b", "rhs": "q*b*a", "paper_ref": "r"},
            {"name": "false", "preset": "GLq2", "lhs": "a*b", "rhs": "b*a", "paper_ref": "r"},
            {"name": "typo", "preset": "GLq2", "lhs": "a*b", "rhs": "q^2*b*a", "paper_ref": "r", "flag": "misprint"},
            {"name": "unknown preset", "preset": "Nope", "lhs": "a", "rhs": "a", "paper_ref": "r"}
        ]}"#,
    );
    let r = run_one(f, &Options::default());
    let status: Vec<_> = r.suites[0].entries.iter().map(|e| (e.name.as_str(), e.status)).collect();
    assert_eq!(
        status,
        [("false", Status::Fail), ("true", Status::Pass), ("typo", Status::Flagged), ("unknown preset", Status::Fail)]
    );
    let false_entry = &r.suites[0].entries[0];
    assert_eq!(false_entry.residual.as_deref(), Some("(q-1)/q*a*b"));
    assert_eq!(r.summary.fail, 2);
}

#[test]
fn bindings_map_into_the_target_preset() {
    // ad - qbc = 1 on the Gauss parametrization of SL_q(2,R).
    let f = file(
        r#"{"suite": "t/bound", "bindings": {"from": "GLq2",
              "map": {"a": "rho + fm*fp*rho", "b": "fm*rho^-1", "c": "fp*rho", "d": "rho^-1", "Dq": "1"}},
            "entries": [
              {"name": "det", "preset": "SLq2R_gauss", "lhs": "a*d - q*b*c", "rhs": "1", "paper_ref": "r"},
              {"name": "wrong det", "preset": "SLq2R_gauss", "lhs": "a*d - b*c", "rhs": "1", "paper_ref": "r"}
            ]}"#,
    );
    let r = run_one(f, &Options::default());
    assert_eq!(r.suites[0].entries[0].status, Status::Pass);
    assert_eq!(r.suites[0].entries[1].status, Status::Fail);
}

#[test]
fn numeric_cross_check_agrees_and_notes() {
    let f = file(
        r#"{"suite": "t/num", "entries": [
            {"name": "true", "preset": "GLq2", "lhs": "d*a", "rhs": "a*d - (q-q^-1)*b*c", "paper_ref": "r"},
            {"name": "root at 1", "preset": "GLq2", "lhs": "a*b", "rhs": "b*a", "paper_ref": "r"}
        ]}"#,
    );
    let opts = Options { q_numeric: Some(BigRational::from_integer(1.into())), ..Options::default() };
    let r = run_one(f, &opts);
    let notes: Vec<_> = r.suites[0].entries.iter().map(|e| e.note.clone().unwrap()).collect();
    assert!(notes[0].contains("vanishes at this point"), "{notes:?}");
    assert!(notes[1].contains("agrees"), "{notes:?}");
    assert_eq!(r.summary.fail, 1);
}

#[test]
fn relation_suites_agree_numerically() {
    let suites = runner::select(runner::catalogue(Vec::new()).unwrap(), "relations/*").unwrap();
    let opts = Options { q_numeric: Some(BigRational::new(7.into(), 10.into())), ..Options::default() };
    let r = runner::run(&suites, &opts);
    assert_eq!(r.summary.fail, 0, "{}", r.to_text());
    for e in r.suites.iter().flat_map(|s| &s.entries) {
        let note = e.note.as_deref().unwrap_or("");
        assert!(note.contains("q = 7/10"), "{}: {note}", e.name);
        assert!(!note.contains("disagrees"), "{}: {note}", e.name);
    }
}

#[test]
fn report_is_independent_of_thread_count() {
    let suites = runner::catalogue(Vec::new()).unwrap();
    let one = runner::run(&suites, &Options { jobs: Some(1), ..Options::default() }).to_json();
    let many = runner::run(&suites, &Options { jobs: Some(4), ..Options::default() }).to_json();
    assert_eq!(one, many);
    assert!(!one.contains("wall_ms"));
}

#[test]
fn timings_are_opt_in() {
    let suites = runner::select(runner::catalogue(Vec::new()).unwrap(), "relations/gl").unwrap();
    let r = runner::run(&suites, &Options { timings: true, ..Options::default() });
    assert!(r.suites[0].entries.iter().all(|e| e.wall_ms.is_some()));
}

#[test]
fn dumps() {
    assert!(runner::dump_preset("SLq2R_gauss").unwrap().contains("rules:"));
    assert!(matches!(runner::dump_preset("Nope"), Err(LoadError::UnknownPreset(_))));
    let gl = runner::dump_suite("relations/gl", Vec::new()).unwrap();
    assert_eq!(SuiteFile::from_json(&gl, "dump").unwrap().suite, "relations/gl");
    assert!(matches!(runner::dump_suite("nope", Vec::new()), Err(LoadError::UnknownSuite(_))));
    for name in runner::DERIVATION_DUMPS {
        let text = runner::dump_derivation(name).unwrap();
        assert!(!text.trim().is_empty(), "{name}");
    }
    assert!(matches!(runner::dump_derivation("nope"), Err(LoadError::UnknownDerivation(_))));
}
