use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn tilelab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tilelab")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn classify_reports_profile_and_thresholds() {
    let v = json(&tilelab(&["classify", "--pattern", "k3", "--n", "60"]));
    assert_eq!(v["profile"]["d_star"], "3/2");
    assert_eq!(v["profile"]["category"], "StrictlyBalanced");
    assert!(v["thresholds"]["p_perturbed"].as_f64().unwrap() > 0.0);
    let v = json(&tilelab(&["classify", "--pattern", "p3"]));
    assert_eq!(v["profile"]["category"], "BalancedNotStrictly");
    assert!(v["thresholds"].is_null());
}

#[test]
fn sample_then_tile() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.txt");
    let g = g.to_str().unwrap();
    let out = tilelab(&["sample", "--n", "12", "--p", "1", "--seed", "3", "--out", g]);
    assert!(out.status.success());
    let v = json(&tilelab(&["tile", "--graph", g, "--pattern", "k3"]));
    assert_eq!(v["status"], "found");
    assert_eq!(v["copies"].as_array().unwrap().len(), 4);
    let v = json(&tilelab(&["tile", "--graph", g, "--pattern", "k4", "--mode", "max"]));
    assert_eq!(v["size"], 3);
    assert_eq!(v["exact"], true);

    let g6 = dir.path().join("g.g6");
    let g6 = g6.to_str().unwrap();
    assert!(tilelab(&["sample", "--n", "9", "--p", "0", "--format", "graph6", "--out", g6]).status.success());
    let v = json(&tilelab(&["tile", "--graph", g6]));
    assert_eq!(v["status"], "none_exists");
}

#[test]
fn sampling_is_reproducible() {
    let a = tilelab(&["sample", "--n", "30", "--p", "0.2", "--base", "extremal:3/10", "--seed", "9"]);
    let b = tilelab(&["sample", "--n", "30", "--p", "0.2", "--base", "extremal:3/10", "--seed", "9"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn check_regular_and_star_tile() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("kb.txt");
    let mut text = String::from("8\n");
    for u in 0..4 {
        for v in 4..8 {
            text += &format!("{u} {v}\n");
        }
    }
    fs::write(&g, text).unwrap();
    let g = g.to_str().unwrap();
    let v = json(&tilelab(&["check-regular", "--graph", g, "--a", "0..4", "--b", "4,5,6,7", "--eps", "1/4", "--d", "1/2"]));
    assert_eq!(v["regularity"]["regular"]["verdict"], "yes");
    assert_eq!(v["super_regularity"]["super_regular"], true);
    let v = json(&tilelab(&["star-tile", "--graph", g, "--t", "3"]));
    assert_eq!(v["stars"].as_array().unwrap().len(), 2);
    assert_eq!(v["uncovered"], 0);
}

#[test]
fn complete_pair_synthetic() {
    let v = json(&tilelab(&["complete-pair", "--size", "30", "--seed", "1"]));
    assert_eq!(v["status"], "found");
    assert_eq!(v["copies"].as_array().unwrap().len(), 20);
}

#[test]
fn sweep_writes_csv_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    fs::write(&cfg, r#"{"pattern":"k3","n_values":[9],"base":"empty","c_grid":["1/2","4"],"trials":3,"seed":1,"budget":1000}"#).unwrap();
    let csv = dir.path().join("out.csv");
    let out = tilelab(&["sweep", "--config", cfg.to_str().unwrap(), "--out", csv.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], tilelab::experiment::CSV_HEADER);
    assert_eq!(lines.len(), 3);
    let js = dir.path().join("out.json");
    let out = tilelab(&["sweep", "--config", cfg.to_str().unwrap(), "--out", js.to_str().unwrap(), "--format", "json", "--seed", "5"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&fs::read_to_string(&js).unwrap()).unwrap();
    assert_eq!(v["metadata"]["seed"], 5);
    assert_eq!(v["trials"].as_array().unwrap().len(), 6);
}

#[test]
fn config_and_io_errors_exit_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.json");
    let out = tilelab(&["sweep", "--config", missing.to_str().unwrap(), "--out", "/dev/null"]);
    assert!(!out.status.success());
    let cfg = dir.path().join("bad.json");
    fs::write(&cfg, r#"{"pattern":"k3","n_values":[10],"base":"empty","trials":3,"seed":1,"budget":1000}"#).unwrap();
    let out = tilelab(&["sweep", "--config", cfg.to_str().unwrap(), "--out", "/dev/null"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("multiple of"));
    assert!(!tilelab(&["tile", "--graph", missing.to_str().unwrap()]).status.success());
    assert!(!tilelab(&["classify", "--pattern", "nope"]).status.success());
}

#[test]
fn demos_produce_json() {
    let v = json(&tilelab(&["extremal-demo", "--n", "12", "--trials", "4", "--c-grid", "0,8"]));
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);
    assert_eq!(v["sweep"]["rows"][0]["certified_no"], 4);
    let v = json(&tilelab(&["compare-base", "--n", "12", "--trials", "4", "--c-grid", "1,4"]));
    assert_eq!(v["dominance_violations"], 0);
}
