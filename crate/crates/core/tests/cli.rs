use std::path::PathBuf;
use std::process::{Command, Output};

fn superkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superkit"))
        .args(args)
        .env_remove("SUPERKIT_SEED")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

const RE_IM_FIELD: &str = r#"{"charts":{"V":{
    "phi":{"terms":[[1,0,"1","0"],[-1,0,"1","0"]]},
    "psi1":{"terms":[[2,0,"1/2","0"],[-2,0,"1/2","0"]]},
    "psi2":{"terms":[[1,0,"1","0"],[-1,0,"-1","0"]]}}}}"#;

const RE_RE_FIELD: &str = r#"{"charts":{"V":{
    "psi1":{"terms":[[1,0,"1","0"],[-1,0,"1","0"]]},
    "psi2":{"terms":[[0,0,"2","0"]]}}}}"#;

#[test]
fn classify_marks_the_maximal_line() {
    let o = superkit(&["classify", "--k1-range", "-2,4", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 7);
    assert!(rows.iter().all(|r| r.contains(",true,,1")));
}

#[test]
fn classify_reports_failing_clauses() {
    let o = superkit(&["classify", "--k1-range", "1,1", "--lambda1", "1", "--lambda2", "1", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8(o.stdout).unwrap().contains("not maximal: det λ"));
    let dir = tempfile::tempdir().unwrap();
    let alpha = write(&dir, "alpha.json", r#"{"terms":[[-1,0,"1","0"]]}"#);
    let o = superkit(&["classify", "--k1-range", "1,1", "--alpha", alpha.to_str().unwrap(), "--format", "csv"]);
    assert!(String::from_utf8(o.stdout).unwrap().contains("α obstruction"));
}

#[test]
fn empty_range_is_a_usage_error() {
    assert_eq!(code(&superkit(&["classify", "--k1-range", "3,1"])), 2);
}

#[test]
fn unknown_flags_and_policies_are_usage_errors() {
    assert_eq!(code(&superkit(&["paper-check", "--policy", "flip"])), 2);
    assert_eq!(code(&superkit(&["scan", "--model", "1,1"])), 2);
    assert_eq!(code(&superkit(&["nope"])), 2);
}

#[test]
fn paper_check_exits_zero_and_is_deterministic() {
    let a = superkit(&["paper-check"]);
    let b = superkit(&["paper-check"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["entries"].as_array().unwrap().len(), 10);
}

#[test]
fn standard_model_field_of_mixed_type_is_consistent() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(&dir, "f.json", RE_IM_FIELD);
    let o = superkit(&["consistency", "--model", "1,1", "--fields", f.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["consistent"], true);
    assert_eq!(v["model"], serde_json::json!([1, 1]));
    for key in ["policy", "field", "good_residual", "necessary_ok", "residual_terms", "paper_diff"] {
        assert!(v.get(key).is_some(), "{key}");
    }
}

#[test]
fn twisted_model_real_real_field_is_inconsistent() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(&dir, "f.json", RE_RE_FIELD);
    let o = superkit(&["consistency", "--model", "2,0", "--fields", f.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["consistent"], false);
    assert!(!v["residual_terms"].as_array().unwrap().is_empty());
}

#[test]
fn zero_field_is_good_and_consistent() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(&dir, "f.json", r#"{"charts":{"V":{}}}"#);
    let path = f.to_str().unwrap();
    let o = superkit(&["goodfield", "--model", "1,1", "--fields", path, "--require-good"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["good"], true);
    let o = superkit(&["consistency", "--model", "2,0", "--fields", path, "--require-good"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn preconditions_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(&dir, "f.json", RE_IM_FIELD);
    let path = f.to_str().unwrap();
    assert_eq!(code(&superkit(&["consistency", "--model", "1,2", "--fields", path])), 3);
    assert_eq!(code(&superkit(&["consistency", "--model", "1,1", "--fields", path, "--require-good"])), 3);
    assert_eq!(code(&superkit(&["goodfield", "--model", "1,1", "--lambda1", "0", "--fields", path])), 3);
}

#[test]
fn malformed_files_exit_two_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(&dir, "f.json", "{\"charts\": {\"V\": {\"phi\": 3}}}");
    let o = superkit(&["goodfield", "--model", "1,1", "--fields", f.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 1 column"), "{err}");
    let missing = dir.path().join("missing.json");
    assert_eq!(code(&superkit(&["goodfield", "--model", "1,1", "--fields", missing.to_str().unwrap()])), 2);
}

#[test]
fn scan_is_seeded_and_ordered() {
    let run = |seed: &str| {
        Command::new(env!("CARGO_BIN_EXE_superkit"))
            .args(["scan", "--model", "2,0", "--family", "real,real", "--count", "5", "--format", "csv"])
            .env("SUPERKIT_SEED", seed)
            .output()
            .unwrap()
    };
    let a = run("9");
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, run("9").stdout);
    assert_ne!(a.stdout, run("10").stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("index,type1,type2,good_residual_norm,necessary_ok,consistent,must_vanish"));
    for (i, l) in lines.enumerate() {
        assert!(l.starts_with(&format!("{i},real,real,")));
        assert!(l.ends_with(",false,psi2"), "{l}");
    }
    let bad = Command::new(env!("CARGO_BIN_EXE_superkit"))
        .args(["scan", "--model", "2,0", "--family", "real,real"])
        .env("SUPERKIT_SEED", "abc")
        .output()
        .unwrap();
    assert_eq!(code(&bad), 2);
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = superkit(&["paper-check", "--policy", "negate", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read(&out).unwrap(), superkit(&["paper-check", "--policy", "negate"]).stdout);
}
