use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn symqm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symqm")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn error_record(out: &Output) -> Value {
    assert!(!out.status.success());
    assert!(out.stdout.is_empty());
    serde_json::from_slice(&out.stderr).expect("stderr is one JSON record")
}

fn config(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name).display().to_string()
}

fn scratch(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("symqm-cli-{}-{name}", std::process::id()))
}

#[test]
fn chsh_quantum_example() {
    let r = json(&symqm(&["chsh", "--angles", "0,90,135,45", "--mode", "quantum"]));
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["command"], "chsh");
    let v = r["outputs"]["value"].as_f64().unwrap();
    assert!((v - 2.0 * std::f64::consts::SQRT_2).abs() < 1e-9);
    assert_eq!(r["outputs"]["violated"], true);
}

#[test]
fn chsh_classical_table() {
    let r = json(&symqm(&["chsh", "--mode", "classical"]));
    let rows = r["outputs"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 16);
    assert!(rows.iter().all(|row| row["value"].as_i64().unwrap().abs() == 2));
    assert_eq!(r["outputs"]["bound"], 2);

    let csv = symqm(&["chsh", "--mode", "classical", "--format", "csv"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 17);
    assert_eq!(lines[0], "lambda_a,lambda_a_prime,mu_b,mu_b_prime,value");
}

#[test]
fn epr_example_with_seed() {
    let r = json(&symqm(&["epr", "--angle-deg", "60", "--samples", "1000000", "--seed", "42"]));
    let est = r["outputs"]["estimate"].as_f64().unwrap();
    let se = r["outputs"]["std_error"].as_f64().unwrap();
    assert!((est + 0.5).abs() < 4.0 * se);
    assert_eq!(r["diagnostics"]["seed"], 42);
}

#[test]
fn seed_changes_the_draws() {
    let a = symqm(&["epr", "--samples", "20000", "--seed", "1"]);
    let b = symqm(&["epr", "--samples", "20000", "--seed", "2"]);
    assert_ne!(a.stdout, b.stdout);
}

#[test]
fn pipeline_documents() {
    let h = json(&symqm(&["hilbert", "--config", &config("bernoulli_sum.json")]));
    assert_eq!(h["outputs"]["observable_dimension"], 3);
    assert_eq!(h["outputs"]["kernel_dimension"], 1);
    assert!(h["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));

    let b = json(&symqm(&["born", "--config", &config("spin_chain.json")]));
    let m = &b["outputs"]["born_matrix"];
    assert!((m[0][0].as_f64().unwrap() - 0.25).abs() < 1e-12);
    assert!((m[0][1].as_f64().unwrap() - 0.75).abs() < 1e-12);
}

#[test]
fn out_flag_writes_file() {
    let path = scratch("boost.json");
    let out = symqm(&["boost", "--v1", "3/5", "--v2", "3/5", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(r["outputs"]["combined_velocity_exact"], "15/17");
}

#[test]
fn usage_errors_exit_two() {
    let out = symqm(&["teleport"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_record(&out)["kind"], "usage");

    let out = symqm(&["chsh", "--angles", "0,90,135"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn input_errors_name_the_operation() {
    let out = symqm(&["boost", "--v1", "3/2"]);
    assert_eq!(out.status.code(), Some(2));
    let rec = error_record(&out);
    assert_eq!(rec["command"], "boost");
    assert_eq!(rec["kind"], "input");
    assert!(rec["op"].as_str().is_some());
}

#[test]
fn contract_errors_exit_three() {
    let path = scratch("insufficient.json");
    std::fs::write(
        &path,
        r#"{"schema_version": 1,
            "model": {"parameters": [0.3, 0.5, 0.7],
                      "rows": [[0.49, 0.21, 0.21, 0.09], [0.25, 0.25, 0.25, 0.25], [0.09, 0.21, 0.21, 0.49]]},
            "statistic": [0, 0, 1, 1]}"#,
    )
    .unwrap();
    let out = symqm(&["hilbert", "--config", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(out.status.code(), Some(3));
    let rec = error_record(&out);
    assert_eq!(rec["kind"], "contract");
    assert_eq!(rec["op"], "build_spaces");
}

#[test]
fn config_errors() {
    let out = symqm(&["reduce"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_record(&out)["kind"], "config");

    let path = scratch("future.json");
    std::fs::write(&path, r#"{"schema_version": 99}"#).unwrap();
    let out = symqm(&["hilbert", "--config", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(out.status.code(), Some(2));
    assert!(error_record(&out)["message"].as_str().unwrap().contains("schema_version"));
}

#[test]
fn io_errors_exit_four() {
    let out = symqm(&["hilbert", "--config", "/nonexistent/doc.json"]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(error_record(&out)["kind"], "io");

    let out = symqm(&["cox", "--out", "/nonexistent/dir/out.json"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn timings_are_opt_in() {
    let plain = json(&symqm(&["cox"]));
    assert!(plain["diagnostics"].get("timings_ms").is_none());
    let timed = json(&symqm(&["cox", "--timings"]));
    assert!(timed["diagnostics"]["timings_ms"]["total"].as_f64().is_some());
}
