//! End-to-end tests of the binary: exit codes, output shapes, determinism.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn planechar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_planechar"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn planechar_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_planechar"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary starts");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().expect("binary finishes")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn analyze_reports_the_full_verdict() {
    let out = planechar(&["analyze", "[3,2]"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["betti"]["a"], serde_json::json!([2, 2]));
    assert_eq!(v["betti"]["b"], serde_json::json!([4]));
    assert_eq!(v["verdict"]["smoothable"], serde_json::json!(true));
    assert_eq!(v["table"]["H"], serde_json::json!([1, 3, 4, 4, 4, 4]));
}

#[test]
fn analyze_shows_the_splitting() {
    let out = planechar(&["analyze", "[4,2]"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"]["smoothable"], serde_json::json!(false));
    assert_eq!(
        v["decomposition"],
        serde_json::json!([[0, [4]], [1, [1]]])
    );
}

#[test]
fn analyze_rejects_invalid_characters_with_exit_2() {
    let out = planechar(&["analyze", "[2,3]"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("nonincreasing"));
}

#[test]
fn analyze_batch_reads_stdin_lines() {
    let out = planechar_stdin(&["analyze", "-"], "[3,2]\n[4,2]\n");
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.trim().lines().collect();
    assert_eq!(lines.len(), 2);
    let second: serde_json::Value = serde_json::from_str(lines[1]).unwrap();
    assert_eq!(second["character"], serde_json::json!([4, 2]));
}

#[test]
fn enumerate_counts_match_the_window() {
    let out = planechar(&["enumerate", "2", "5", "--format", "tsv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.trim().lines().collect();
    assert_eq!(lines.len(), 10, "header plus nine rows");

    let out = planechar(&["enumerate", "2", "5", "nonconnected"]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.trim().lines().collect();
    assert_eq!(lines.len(), 1);
    assert!(lines[0].contains("[4,2]"));

    let out = planechar(&["enumerate", "1", "3"]);
    assert_eq!(stdout(&out).trim().lines().count(), 3);
}

#[test]
fn construct_emits_matrix_generators_and_probe() {
    let out = planechar(&["construct", "--character", "[4,2]"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(
        v["matrix"]["entries"],
        serde_json::json!([["x1", "x0^3"], ["x2", "x1^3"], ["0", "x2"]])
    );
    assert_eq!(
        v["generators"],
        serde_json::json!(["x2^2", "-x1*x2", "x1^4 - x0^3*x2"])
    );
    assert_eq!(v["probe"]["expected_rank"], serde_json::json!(2));
}

#[test]
fn construct_rejects_unrealizable_data_with_exit_2() {
    let out = planechar(&["construct", "--betti", r#"{"a":[1,1],"b":[3]}"#]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("sum condition"));
}

#[test]
fn resolve_measures_the_named_ideal() {
    let out = planechar(&["resolve", "x2^2, x1*x2, x1^4 - x0^3*x2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["betti"]["b"], serde_json::json!([3, 5]));
    assert_eq!(v["hilbert"]["H"], serde_json::json!([1, 3, 4, 5, 5, 5, 5]));
}

#[test]
fn resolve_accepts_json_generator_lists() {
    let out = planechar(&["resolve", r#"["x2^2","x1^2"]"#]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["betti"]["b"], serde_json::json!([4]));
}

#[test]
fn resolve_rejects_garbage_with_exit_2() {
    let out = planechar(&["resolve", "x0 + x1^2"]);
    assert_eq!(out.status.code(), Some(2));

    // A principal ideal is not a points ideal.
    let out = planechar(&["resolve", "x1^3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn rational_and_prime_modes_agree() {
    let prime = planechar(&["resolve", "x2^2, x1*x2, x1^4 - x0^3*x2"]);
    let rational = planechar(&[
        "resolve",
        "x2^2, x1*x2, x1^4 - x0^3*x2",
        "--field",
        "rational",
    ]);
    assert_eq!(stdout(&prime), stdout(&rational));
}

#[test]
fn output_is_deterministic_for_fixed_seed() {
    let a = planechar(&["construct", "--character", "[6,3,3]", "--seed", "11"]);
    let b = planechar(&["construct", "--character", "[6,3,3]", "--seed", "11"]);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn selftest_passes_and_respects_jobs() {
    let out = planechar(&["selftest", "2", "8", "--jobs", "2", "--format", "text"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("selftest: PASS (20 characters"));
}

#[test]
fn invalid_field_mode_exits_2() {
    let out = planechar(&["resolve", "x1, x2", "--field", "prime:32001"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("not an odd prime"));
}

#[test]
fn out_flag_writes_the_file() {
    let dir = std::env::temp_dir().join("planechar-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("rows.tsv");
    let out = planechar(&[
        "enumerate",
        "1",
        "3",
        "--format",
        "tsv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    let content = std::fs::read_to_string(&path).unwrap();
    assert_eq!(content.trim().lines().count(), 4);
    std::fs::remove_file(&path).ok();
}
