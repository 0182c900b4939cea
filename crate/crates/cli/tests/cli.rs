//! End-to-end checks of the `snq` binary: output schema, determinism, exit
//! codes, and file output.

use std::process::{Command, Output};

fn snq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_snq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(out)).expect("valid json")
}

#[test]
fn vacuum_moments_json_fields() {
    let out = snq(&["moments"]);
    assert!(out.status.success());
    let doc = json(&out);
    assert_eq!(doc["var_x"].as_f64().unwrap(), 0.5);
    assert_eq!(doc["var_p"].as_f64().unwrap(), 0.5);
    assert_eq!(doc["mean_n"].as_f64().unwrap(), 0.0);
}

#[test]
fn displaced_fock_moments_match_closed_form() {
    let out = snq(&["moments", "--n", "1", "--alpha-re", "1"]);
    let doc = json(&out);
    assert_eq!(doc["mean_n"].as_f64().unwrap(), 2.0);
}

#[test]
fn numeric_oracle_deviation_is_reported_small() {
    let out = snq(&["moments", "--n", "1", "--r", "0.5", "--numeric"]);
    assert!(out.status.success());
    let doc = json(&out);
    assert!(doc["max_deviation"].as_f64().unwrap() <= 1e-8);
    assert!(doc["cutoff"].as_i64().unwrap() >= 8);
}

#[test]
fn explicit_cutoff_is_honored() {
    let out = snq(&["moments", "--n", "1", "--alpha-re", "0.5", "--numeric", "--cutoff", "64"]);
    let doc = json(&out);
    assert_eq!(doc["cutoff"].as_i64().unwrap(), 64);
}

#[test]
fn snr_command_reports_rho() {
    let out = snq(&["snr", "--n", "1", "--alpha-re", "1"]);
    let doc = json(&out);
    let rho = doc["rho"].as_f64().unwrap();
    assert!((rho - 4.0 / 3.0).abs() < 1e-10);

    let silent = json(&snq(&["snr", "--alpha-im", "2"]));
    assert_eq!(silent["rho"].as_f64().unwrap(), 0.0);
}

#[test]
fn optimize_reports_both_families() {
    let out = snq(&["optimize", "--ns", "10", "--n", "1"]);
    let doc = json(&out);
    assert_eq!(doc["rho_max_squeezed"].as_f64().unwrap(), 48.0);
    assert_eq!(doc["rho_max_coherent"].as_f64().unwrap(), 12.0);
}

#[test]
fn infeasible_budget_gives_structured_error_and_exit_2() {
    let out = snq(&["optimize", "--ns", "1", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let doc = json(&out);
    assert!(doc["error"]
        .as_str()
        .unwrap()
        .starts_with("infeasible: n exceeds energy budget"));
}

#[test]
fn figure1_csv_header_and_rows() {
    let out = snq(&["figure1", "--ns", "10", "--n-max", "10", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "n,ratio,envelope");
    assert_eq!(text.lines().count(), 12);
    let row1: Vec<&str> = text.lines().nth(2).unwrap().split(',').collect();
    assert_eq!(row1[0], "1");
    let ratio: f64 = row1[1].parse().unwrap();
    assert!((ratio - 0.109091).abs() < 1e-6);
}

#[test]
fn zero_tolerance_is_a_usage_error() {
    let out = snq(&["moments", "--tol", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn unknown_flag_exits_2() {
    let out = snq(&["moments", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn validate_is_byte_deterministic() {
    let a = snq(&["validate", "--seed", "7", "--cases", "5"]);
    let b = snq(&["validate", "--seed", "7", "--cases", "5"]);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn validate_passes_at_default_tolerance() {
    let out = snq(&["validate", "--seed", "42", "--cases", "100"]);
    assert_eq!(out.status.code(), Some(0), "stdout: {}", stdout(&out));
    let doc = json(&out);
    for row in doc.as_array().unwrap() {
        assert_eq!(row["pass"].as_bool(), Some(true), "property {}", row["property"]);
    }
}

#[test]
fn validate_reports_failures_with_exit_1() {
    // an unattainable tolerance must fail the oracle comparison, not panic
    let out = snq(&["validate", "--seed", "3", "--cases", "2", "--tol", "1e-30"]);
    assert_eq!(out.status.code(), Some(1));
    let doc = json(&out);
    let failing: Vec<&serde_json::Value> = doc
        .as_array()
        .unwrap()
        .iter()
        .filter(|row| row["pass"].as_bool() == Some(false))
        .collect();
    assert!(!failing.is_empty());
    for row in &failing {
        assert!(!row["counterexample"].as_str().unwrap().is_empty());
    }
}

#[test]
fn out_flag_writes_same_bytes_as_stdout() {
    let dir = std::env::temp_dir().join("snq-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("figure1.csv");
    let piped = snq(&["figure1", "--ns", "5", "--n-max", "5", "--format", "csv"]);
    let filed = snq(&[
        "figure1", "--ns", "5", "--n-max", "5", "--format", "csv", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(filed.status.success());
    assert!(filed.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), piped.stdout);
}
