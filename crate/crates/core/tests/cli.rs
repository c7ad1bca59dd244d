use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coherence-shor"))
        .args(args)
        .env_remove("COHERENCE_SHOR_SEED")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

#[test]
fn exact_reports_full_coherence() {
    let out = run(&["exact", "--n", "15", "--x", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["N"], 15);
    assert_eq!(v["r"], 4);
    assert_eq!(v["L"], 8);
    assert_eq!(v["exact"].as_f64(), Some(0.5));
    assert_eq!(v["classical_fraction"], "11/64");
    assert_eq!(v["lower_bound"].as_f64(), Some(0.202642367285));
}

#[test]
fn sample_is_reproducible_byte_for_byte() {
    let args = ["sample", "--n", "15", "--x", "7", "--trials", "20000", "--seed", "9"];
    let a = run(&args);
    let b = run(&[&args[..], &["--threads", "1"]].concat());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let other = run(&["sample", "--n", "15", "--x", "7", "--trials", "20000", "--seed", "10"]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn seed_from_environment() {
    let with_flag = run(&["sample", "--n", "15", "--x", "7", "--trials", "5000", "--seed", "4"]);
    let with_env = Command::new(env!("CARGO_BIN_EXE_coherence-shor"))
        .args(["sample", "--n", "15", "--x", "7", "--trials", "5000"])
        .env("COHERENCE_SHOR_SEED", "4")
        .output()
        .unwrap();
    assert_eq!(with_flag.stdout, with_env.stdout);
}

#[test]
fn sweep_writes_csv_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let out = run(&[
        "sweep", "--n", "15", "--x", "7", "--grid", "p=0:1:0.25", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 6);
    assert_eq!(lines[0], "p,cohering_power,nsid,lower,exact,upper,classical_lo,classical_hi");
    assert!(lines[1].starts_with("0,0,0,"));
    assert!(lines[5].starts_with("1,1,1,0.202642367285,0.5,1,"));
}

#[test]
fn factor_fifteen() {
    let out = run(&["factor", "--n", "15", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["factors"], serde_json::json!([3, 5]));
}

#[test]
fn bounds_include_both_prefactor_forms() {
    let out = run(&["bounds", "--n", "15", "--x", "7", "--p-prep", "0", "--p-detect", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["upper_bound"].as_f64(), Some(66.0 / 256.0));
    assert_eq!(v["upper_bound_single_floor"].as_f64(), Some(34.0 / 256.0));
}

#[test]
fn verify_passes() {
    let out = run(&["verify"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(json(&out)["passed"], true);
}

#[test]
fn exit_codes() {
    // usage
    assert_eq!(run(&["exact"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    // domain
    assert_eq!(run(&["exact", "--n", "15", "--p-prep", "1.5"]).status.code(), Some(3));
    assert_eq!(run(&["exact", "--n", "15", "--x", "5"]).status.code(), Some(3));
    assert_eq!(run(&["factor", "--n", "13"]).status.code(), Some(3));
    // capacity
    assert_eq!(run(&["exact", "--n", "15", "--x", "7", "--exhaustive", "--bits", "20", "--test-mode"]).status.code(), Some(4));
    assert_eq!(run(&["exact", "--n", "4294967297", "--x", "3"]).status.code(), Some(4));
}
