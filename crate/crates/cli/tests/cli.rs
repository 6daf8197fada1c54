//! End-to-end runs of the `wmha` binary: exit codes, report files, and
//! determinism of the output bytes.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn wmha(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wmha")).args(args).output().expect("binary runs")
}

fn tmp(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

#[test]
fn pair_functions_passes() {
    let out = wmha(&["verify", "--kind", "pair", "--size", "3", "--construction", "functions"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("0 failed"), "stdout: {text}");
    assert!(text.contains("dimension: 9"), "stdout: {text}");
}

#[test]
fn smash_report_is_deterministic_and_complete() {
    let a = tmp("smash_a.json");
    let b = tmp("smash_b.json");
    let args = [
        "verify", "--kind", "action", "--set", "3", "--group", "Z2", "--swap", "1", "2",
        "--construction", "smash", "--report",
    ];
    let run_a = wmha(&[&args[..], &[a.to_str().unwrap()]].concat());
    let run_b = wmha(&[&args[..], &[b.to_str().unwrap()]].concat());
    assert_eq!(run_a.status.code(), Some(0), "{}", String::from_utf8_lossy(&run_a.stderr));
    assert_eq!(run_b.status.code(), Some(0));
    let bytes_a = fs::read(&a).expect("report written");
    let bytes_b = fs::read(&b).expect("report written");
    assert_eq!(bytes_a, bytes_b, "reports differ between identical runs");

    let report: serde_json::Value = serde_json::from_slice(&bytes_a).expect("valid JSON");
    assert_eq!(report["dimension"], 18);
    assert_eq!(report["passed"], true);
    let checks = report["checks"].as_array().expect("checks array");
    assert!(checks.len() > 100, "expected the full battery, got {}", checks.len());
    for c in checks {
        assert_eq!(c["status"], "pass", "check {} not passing", c["name"]);
    }
}

#[test]
fn groupoid_file_verifies() {
    let path = tmp("z2.json");
    fs::write(
        &path,
        r#"{"elements":["e","g"],"units":["e"],
            "product":[["e","e","e"],["e","g","g"],["g","e","g"],["g","g","e"]],
            "inverse":{"e":"e","g":"g"}}"#,
    )
    .unwrap();
    let out = wmha(&["verify", "--kind", "groupoid-file", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn malformed_json_exits_two() {
    let path = tmp("garbage.json");
    fs::write(&path, "not json at all").unwrap();
    let out = wmha(&["verify", "--kind", "groupoid-file", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("invalid JSON"));
}

#[test]
fn broken_groupoid_exits_two() {
    let path = tmp("broken.json");
    // Well-formed JSON whose product table breaks composability.
    fs::write(
        &path,
        r#"{"elements":["e","g"],"units":["e"],
            "product":[["e","e","e"],["e","g","g"],["g","e","g"]],
            "inverse":{"e":"e","g":"g"}}"#,
    )
    .unwrap();
    let out = wmha(&["verify", "--kind", "groupoid-file", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a groupoid"));
}

#[test]
fn missing_flags_exit_two() {
    let out = wmha(&["verify", "--kind", "pair"]);
    assert_eq!(out.status.code(), Some(2));
    let out = wmha(&["verify", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn list_checks_names_the_suite() {
    let out = wmha(&["verify", "--kind", "pair", "--size", "2", "--list-checks"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    for name in ["coassociativity", "fullness-left", "antipode-anti-multiplicative", "gamma-kernel"] {
        assert!(text.lines().any(|l| l.starts_with(name)), "missing {name}");
    }
}
