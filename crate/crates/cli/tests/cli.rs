use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hvcheck")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn confirmed_checks_exit_zero() {
    for args in [
        &["vn-nogo", "--dim", "4", "--branch", "zero"][..],
        &["spin-counterexample"],
        &["ks", "--set", "cabello18"],
        &["reconstruct", "--functional", "trace", "--dim", "3"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        assert_eq!(json(&out)["verdict"], "confirmed");
    }
}

#[test]
fn refuted_check_exits_one() {
    let out = run(&["axioms", "--functional", "max-eigenvalue", "--dim", "3", "--probes", "20"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["verdict"], "refuted");
    assert_eq!(v["result"]["linearity_pass"], false);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["vn-nogo", "--dim", "4"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    let out = run(&["reconstruct", "--functional", "born"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["verdict"], "error");
    assert_eq!(run(&["vn-nogo", "--dim", "1", "--branch", "one"]).status.code(), Some(2));
}

#[test]
fn bad_input_reports_error_and_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rho.json");
    fs::write(&path, r#"{"dim": 2, "entries": [[[1,0],[0,0]],[[0,0],[1,0]]]}"#).unwrap();
    let out = run(&["gleason", "--density", path.to_str().unwrap(), "--bases", "5", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(3));
    let v = json(&out);
    assert_eq!(v["verdict"], "error");
    assert!(v["message"].as_str().unwrap().contains("density"));

    let missing = run(&["ks", "--set", "/nonexistent/set.json"]);
    assert_eq!(missing.status.code(), Some(3));
}

#[test]
fn born_reconstruction_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("psi.json");
    fs::write(&path, r#"{"dim": 3, "amplitudes": [[0.6, 0], [0, 0.8], [0, 0]]}"#).unwrap();
    let out = run(&["reconstruct", "--functional", "born", "--state", path.to_str().unwrap(), "--seed", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["basis"], "haar-random");
    assert!(v["result"]["expected_max_error"].as_f64().unwrap() <= 1e-9);
    let entry = &v["result"]["candidate"]["entries"][0][1];
    assert!((entry[0].as_f64().unwrap()).abs() <= 1e-9);
    assert!((entry[1].as_f64().unwrap() + 0.48).abs() <= 1e-9);
}

#[test]
fn joint_search_reports_violations() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("obs.json");
    fs::write(
        &path,
        r#"{"observables": [
            {"label": "X", "dim": 2, "entries": [[[0,0],[1,0]],[[1,0],[0,0]]]},
            {"label": "Z", "dim": 2, "entries": [[[1,0],[0,0]],[[0,0],[-1,0]]]},
            {"label": "S", "dim": 2, "entries": [[[1,0],[1,0]],[[1,0],[-1,0]]]}
        ]}"#,
    )
    .unwrap();
    let out = run(&["joint-search", "--observables", path.to_str().unwrap(), "--coefficients", "1,1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["count"], 8);
    let min = v["result"]["min_gap"].as_f64().unwrap();
    assert!((min - (2.0 - 2f64.sqrt())).abs() <= 1e-9);
}

#[test]
fn text_format_tabulates_spin_records() {
    let out = run(&["spin-counterexample", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    let header = lines.iter().position(|l| l.trim_start().starts_with("sigma_x") && l.ends_with("gap")).unwrap();
    let rows = &lines[header + 1..header + 9];
    assert!(rows.iter().all(|r| r.split_whitespace().count() == 6));
    assert!(text.contains("verdict: confirmed"));
}

#[test]
fn timing_is_opt_in() {
    assert!(json(&run(&["spin-counterexample"]))["elapsed_ms"].is_null());
    assert!(json(&run(&["spin-counterexample", "--timing"]))["elapsed_ms"].is_number());
}
