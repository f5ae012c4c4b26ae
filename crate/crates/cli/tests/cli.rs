use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn ftqc() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_ftqc"));
    c.env_remove("FTQC_SEED");
    c
}

fn fixture() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures/synthetic_12.txt")
}

fn run_ok(cmd: &mut Command) -> Value {
    let out = cmd.output().expect("binary runs");
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

fn error_record(out: &Output) -> Value {
    let line = String::from_utf8_lossy(&out.stderr);
    serde_json::from_str(line.trim()).expect("stderr is one json record")
}

#[test]
fn synth_pi_over_four_is_t() {
    let v = run_ok(ftqc().args(["synth", "--angle", "0.7853981633974483", "--epsilon", "1e-9"]));
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "synth");
    assert_eq!(v["sequence"], serde_json::json!(["T"]));
    assert_eq!(v["satisfied"], true);
}

#[test]
fn par_sim_mean_rounds() {
    let v = run_ok(ftqc().args(["par-sim", "--phi", "1.0", "--ancillas", "20", "--trials", "100000", "--seed", "7"]));
    let mean = v["mean_rounds"].as_f64().unwrap();
    assert!((mean - 2.0).abs() <= 0.02, "mean {mean}");
    assert_eq!(v["seed"], 7);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = ["par-sim", "--phi", "0.3", "--ancillas", "8", "--trials", "2000", "--seed", "11"];
    let a = ftqc().args(args).output().unwrap();
    let b = ftqc().args(args).output().unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn seed_env_is_used_and_flag_wins() {
    let args = ["par-sim", "--phi", "0.3", "--ancillas", "8", "--trials", "2000"];
    let from_env = run_ok(ftqc().args(args).env("FTQC_SEED", "99"));
    assert_eq!(from_env["seed"], 99);
    let from_flag = run_ok(ftqc().args(args).args(["--seed", "5"]).env("FTQC_SEED", "99"));
    assert_eq!(from_flag["seed"], 5);
    let default = run_ok(ftqc().args(args));
    assert_eq!(default["seed"], 7);

    let bad = ftqc().args(args).env("FTQC_SEED", "seven").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert_eq!(error_record(&bad)["error"], "usage");
}

#[test]
fn unknown_flag_is_rejected() {
    let out = ftqc().args(["synth", "--angle", "1", "--epsilon", "0.1", "--bogus"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let rec = error_record(&out);
    assert_eq!(rec["schema"], 1);
    assert_eq!(rec["error"], "usage");
    assert!(out.stdout.is_empty());
}

#[test]
fn missing_integrals_file_gives_error_record() {
    let out = ftqc().args(["estimate-2q", "--integrals", "/definitely/not/here.txt"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let rec = error_record(&out);
    assert_eq!(rec["schema"], 1);
    assert_eq!(rec["error"], "io");
    assert!(rec["message"].as_str().unwrap().contains("not/here.txt"));
}

#[test]
fn invalid_argument_value_is_a_validation_error() {
    let out = ftqc().args(["synth", "--angle", "1", "--epsilon=-1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_record(&out)["error"], "validation");
}

#[test]
fn estimates_feed_frontier() {
    let dir = tempfile::tempdir().unwrap();
    let two = dir.path().join("two.json");
    let one = dir.path().join("one.json");
    let cutoff_csv = dir.path().join("cutoff.csv");
    let grid_csv = dir.path().join("grid.csv");
    let front_csv = dir.path().join("front.csv");

    let s = ftqc()
        .arg("estimate-2q")
        .arg("--integrals")
        .arg(fixture())
        .args(["--cutoff", "1e-10", "--csv"])
        .arg(&cutoff_csv)
        .arg("--out")
        .arg(&two)
        .status()
        .unwrap();
    assert!(s.success());
    let est: Value = serde_json::from_str(&std::fs::read_to_string(&two).unwrap()).unwrap();
    assert_eq!(est["cutoff"]["retained"], 99);
    assert_eq!(est["points"].as_array().unwrap().len(), 4);
    let csv = std::fs::read_to_string(&cutoff_csv).unwrap();
    assert!(csv.starts_with("threshold,retained\n"));

    let s = ftqc()
        .args(["estimate-1q", "--particles", "3", "--grid-bits", "4", "--csv"])
        .arg(&grid_csv)
        .arg("--out")
        .arg(&one)
        .status()
        .unwrap();
    assert!(s.success());
    let grid = std::fs::read_to_string(&grid_csv).unwrap();
    assert_eq!(grid.lines().count(), 1 + 2 * 2);

    let v = run_ok(ftqc().arg("frontier").arg("--in").arg(&two).arg(&one).args(["--cost", "depth", "--csv"]).arg(&front_csv));
    let mut all = Vec::new();
    for doc in [&two, &one] {
        let d: Value = serde_json::from_str(&std::fs::read_to_string(doc).unwrap()).unwrap();
        all.extend(d["points"].as_array().unwrap().iter().cloned());
    }
    let min_depth = all.iter().map(|p| p["depth"].as_u64().unwrap()).min().unwrap();
    assert_eq!(v["optimum"]["point"]["depth"].as_u64().unwrap(), min_depth);
    assert!(std::fs::read_to_string(&front_csv).unwrap().starts_with("method,qubits,depth\n"));

    let capped = ftqc().arg("frontier").arg("--in").arg(&two).args(["--cost", "cap:1"]).output().unwrap();
    assert_eq!(capped.status.code(), Some(1));
    assert_eq!(error_record(&capped)["error"], "validation");
}
