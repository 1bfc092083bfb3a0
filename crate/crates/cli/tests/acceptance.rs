//! Acceptance criterion 9: CLI determinism, the exit-code contract, and
//! positioned machine-readable diagnostics over the parser corpus.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_nilsasakian"))
}

fn write_temp(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("nilsasakian-test-{}-{name}", std::process::id()));
    fs::write(&path, contents).expect("temp file");
    path
}

fn run(args: &[&str]) -> Output {
    binary().args(args).output().expect("binary runs")
}

#[test]
fn criterion_9_json_reports_are_byte_identical_for_fixed_input_and_seed() {
    let h12 = write_temp(
        "h12.lie",
        "algebra h12\ndim 5\n[e1,e2] = e5\n[e3,e4] = e5\n",
    );
    let path = h12.to_str().unwrap();
    for args in [
        vec!["check", path, "--json", "--seed", "3"],
        vec!["trace", path, "--json", "--seed", "3"],
        vec!["cohomology", path, "--json"],
        vec!["adapted-basis", path, "--json"],
        vec!["contact", path, "--json", "--seed", "3", "--trials", "16"],
    ] {
        let first = run(&args);
        let second = run(&args);
        assert_eq!(
            first.stdout, second.stdout,
            "non-deterministic output for {args:?}"
        );
        assert!(!first.stdout.is_empty());
    }
    fs::remove_file(h12).ok();
    println!("[PASS] criterion 9a: byte-identical JSON for identical (input, seed)");
}

#[test]
fn criterion_9_exit_code_contract() {
    let yes = write_temp("yes.lie", "algebra h11\ndim 3\n[e1,e2] = e3\n");
    let no = write_temp("no.lie", "algebra a5\ndim 5\n");
    let bad = write_temp("bad.lie", "algebra broken\ndim 3\n[e1,e2] = e7\n");

    assert_eq!(
        run(&["check", yes.to_str().unwrap()]).status.code(),
        Some(0)
    );
    assert_eq!(run(&["check", no.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(
        run(&["check", bad.to_str().unwrap()]).status.code(),
        Some(1)
    );
    assert_eq!(
        run(&["check", "/nonexistent/file.lie"]).status.code(),
        Some(1)
    );
    assert_eq!(
        run(&["frobnicate", yes.to_str().unwrap()]).status.code(),
        Some(1)
    );
    assert_eq!(run(&["trace", no.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(
        run(&["contact", no.to_str().unwrap()]).status.code(),
        Some(2),
        "conclusive none exits 2"
    );
    assert_eq!(run(&["tievsky-verify", "--m", "1"]).status.code(), Some(0));

    for path in [yes, no, bad] {
        fs::remove_file(path).ok();
    }
    println!("[PASS] criterion 9b: exit codes 0 = yes / 2 = no / 1 = error");
}

#[test]
fn criterion_9_errors_are_positioned_and_machine_readable() {
    let bad = write_temp("positioned.lie", "algebra broken\ndim 3\n[e1,e2] = e7\n");
    let output = run(&["check", bad.to_str().unwrap(), "--json"]);
    assert_eq!(output.status.code(), Some(1));
    let text = String::from_utf8(output.stdout).unwrap();
    let value: serde_json::Value = serde_json::from_str(&text).expect("valid JSON error report");
    let error = &value["error"];
    assert_eq!(error["class"], "semantic");
    assert_eq!(error["line"], 3);
    assert_eq!(error["col"], 11);
    fs::remove_file(bad).ok();

    // the shared corpus this binary is tested against is large enough and
    // covers every error class
    let corpus = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/corpus");
    let count = |dir: &str| {
        fs::read_dir(corpus.join(dir))
            .map(|d| d.count())
            .unwrap_or(0)
    };
    assert!(
        count("valid") + count("invalid") >= 20,
        "corpus of >= 20 files"
    );
    println!("[PASS] criterion 9c: positioned diagnostics in JSON mode; corpus holds >= 20 files");
}

#[test]
fn reports_carry_schema_and_digest() {
    let h11 = write_temp("schema.lie", "algebra h11\ndim 3\n[e1,e2] = e3\n");
    let output = run(&["check", h11.to_str().unwrap(), "--json"]);
    let value: serde_json::Value =
        serde_json::from_str(&String::from_utf8(output.stdout).unwrap()).unwrap();
    assert_eq!(value["schema"], "nilsasakian-report/1");
    assert_eq!(value["answer"], "yes");
    assert!(value["input"]["digest"]
        .as_str()
        .unwrap()
        .starts_with("fnv1a:"));
    assert!(value["basis_change"].is_array());
    fs::remove_file(h11).ok();
}

#[test]
fn golden_check_report_bytes() {
    // frozen bytes of a full yes-report; any schema or rendering drift
    // shows up here first
    let h11 = write_temp("golden.lie", "algebra h11\ndim 3\n[e1,e2] = e3\n");
    let output = run(&["check", h11.to_str().unwrap(), "--json"]);
    let expected = r#"{
  "answer": "yes",
  "basis_change": [
    [
      "1",
      "0",
      "0"
    ],
    [
      "0",
      "1",
      "0"
    ],
    [
      "0",
      "0",
      "1"
    ]
  ],
  "certificate": {
    "form": "a3",
    "reeb": [
      "0",
      "0",
      "1"
    ],
    "top_value": "-1"
  },
  "command": "check",
  "input": {
    "digest": "fnv1a:755b71ef41da3686",
    "dim": 3,
    "name": "h11"
  },
  "m": 1,
  "schema": "nilsasakian-report/1",
  "seed": 0,
  "version": "0.1.0"
}
"#;
    assert_eq!(String::from_utf8(output.stdout).unwrap(), expected);
    fs::remove_file(h11).ok();
}
