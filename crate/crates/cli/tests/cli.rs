use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn cotwist(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cotwist")).args(args).env_remove("COTWIST_FIELD").output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 stdout")
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).to_string_lossy().into_owned()
}

/// Compares against `tests/golden/NAME`; `UPDATE_GOLDEN=1` rewrites it.
fn golden(name: &str, actual: &str) {
    let path: PathBuf = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "output differs from {}", path.display());
}

#[test]
fn exit_codes_separate_failures_from_usage_errors() {
    assert_eq!(code(&cotwist(&["check", "hopf", "sweedler:H4"])), 0);
    assert_eq!(code(&cotwist(&["check", "galois", "trivial:group:C2"])), 1);
    assert_eq!(code(&cotwist(&["check", "hopf", "sweedler:H5"])), 2);
    assert_eq!(code(&cotwist(&["check", "frobenius", "sweedler:H4"])), 2);
    assert_eq!(code(&cotwist(&["verify", "thm0.0"])), 2);
    assert_eq!(code(&cotwist(&["--field", "4", "list"])), 2);
    assert_eq!(code(&cotwist(&[])), 2);
}

#[test]
fn field_flag_overrides_environment() {
    let run = |env: Option<&str>, args: &[&str]| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_cotwist"));
        c.env_remove("COTWIST_FIELD");
        if let Some(v) = env {
            c.env("COTWIST_FIELD", v);
        }
        let out = c.args(args).output().unwrap();
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
        let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
        doc["field"].as_str().unwrap().to_string()
    };
    assert_eq!(run(None, &["export", "group:C2"]), "Q");
    assert_eq!(run(Some("5"), &["export", "group:C2"]), "F5");
    assert_eq!(run(Some("5"), &["export", "group:C2", "--field", "7"]), "F7");
}

#[test]
fn json_reports_parse_and_are_deterministic() {
    let a = cotwist(&["verify", "thm3.2", "--json"]);
    let b = cotwist(&["verify", "thm3.2", "--json"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(v["entries"].as_array().is_some_and(|e| !e.is_empty()));
    golden("verify-thm3.2.json", &stdout(&a));
}

#[test]
fn failing_json_report_carries_the_witness() {
    let out = cotwist(&["check", "galois", "trivial:sweedler:H4", "--json"]);
    assert_eq!(code(&out), 1);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let failed: Vec<&Value> = v["entries"].as_array().unwrap().iter().filter(|e| e["passed"] == false).collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().any(|e| e.to_string().contains("kernel vector")), "{v}");
}

#[test]
fn exported_documents_match_golden() {
    for (name, file) in [("group:C2", "group-C2.json"), ("harrison:C2-sign", "harrison-C2-sign.json")] {
        let out = cotwist(&["export", name]);
        assert_eq!(code(&out), 0);
        golden(file, &stdout(&out));
    }
}

#[test]
fn exported_documents_reload_unchanged() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("a.json");
    let second = dir.path().join("b.json");
    let p = |x: &Path| x.to_string_lossy().into_owned();
    assert_eq!(code(&cotwist(&["crossed", "to-twisting", "harrison:H4-twist", "-o", &p(&first)])), 0);
    assert_eq!(code(&cotwist(&["check", "twisting", &p(&first)])), 0);
    assert_eq!(code(&cotwist(&["invert-twisting", &p(&first), "-o", &p(&second)])), 0);
    assert_eq!(code(&cotwist(&["check", "twisting", &p(&second)])), 0);
}

#[test]
fn out_flag_moves_the_document_off_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    let out = cotwist(&["crossed", "gauge", "harrison:C2-sign", "-o", &path.to_string_lossy()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("verdict: PASS"));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["format"], "cotwist-structure/1");
}

#[test]
fn eval_checks_equations_against_bound_documents() {
    let ok = cotwist(&["eval", &fixture("deltatau.eqn"), "--env", "C=harrison:H4-twist"]);
    assert_eq!(code(&ok), 0, "{}", stdout(&ok));
    let bad = cotwist(&["eval", &fixture("false.eqn"), "--env", "C=harrison:H4-twist"]);
    assert_eq!(code(&bad), 1);
    assert!(stdout(&bad).contains("at basis vector"));
    let unbound = cotwist(&["eval", &fixture("deltatau.eqn")]);
    assert_eq!(code(&unbound), 2);
}

#[test]
fn every_theorem_verifies_on_every_instance() {
    let list = stdout(&cotwist(&["list"]));
    let ids: Vec<&str> = list.lines().filter_map(|l| l.strip_prefix("theorem")).map(|l| l.split_whitespace().next().unwrap()).collect();
    assert_eq!(ids.len(), 11);
    for id in ids {
        let out = cotwist(&["verify", id, "--all-instances", "--field", "5"]);
        assert_eq!(code(&out), 0, "{id}\n{}", stdout(&out));
    }
}
