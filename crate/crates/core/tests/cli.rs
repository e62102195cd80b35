use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypcircle")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

fn data_file() -> String {
    concat!(env!("CARGO_MANIFEST_DIR"), "/data/psl2z_maass.txt").to_string()
}

#[test]
fn count_with_oracle() {
    let v = json(&run(&["count", "--s", "1", "--oracle"]));
    assert_eq!(v["count"], 10);
    assert_eq!(v["oracle"], 10);
    let v = json(&run(&["count", "--z", "0.2,1.3", "--w", "-0.1,0.9", "--s", "4.5", "--oracle"]));
    assert_eq!(v["agree"], true);
}

#[test]
fn error_term_csv_round_trips_through_moments() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("e.csv");
    let csv_s = csv.to_str().unwrap();
    let out = run(&["error-term", "--smax", "8", "--step", "0.015625", "--alpha", "0.5", "--out", csv_s]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("s,value"));
    let row = lines.nth(10).unwrap();
    let (s, v) = row.split_once(',').unwrap();
    assert_eq!(s, "1.5625000000000000e-1");
    // 17 significant digits
    assert_eq!(v.split('e').next().unwrap().trim_start_matches('-').len(), 18);
    assert_eq!(text.lines().count(), 8 * 64 + 2);

    let m = json(&run(&["moments", "--in", csv_s, "--T", "4"]));
    assert!(m["first"].as_f64().unwrap().is_finite());
    assert!(m["second"].as_f64().unwrap() >= m["first"].as_f64().unwrap().powi(2));
    let short = run(&["moments", "--in", csv_s, "--T", "5"]);
    assert_eq!(short.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let read = |name: &str| {
        let p = dir.path().join(name);
        let out = run(&["error-term", "--z", "0.2,1.3", "--w", "-0.1,0.9", "--smax", "9", "--alpha", "0.25", "--out", p.to_str().unwrap()]);
        assert!(out.status.success());
        std::fs::read(p).unwrap()
    };
    assert_eq!(read("a.csv"), read("b.csv"));
    let a = run(&["scan-pointwise", "--alpha", "0.25", "--smax", "10"]);
    let b = run(&["scan-pointwise", "--alpha", "0.25", "--smax", "10"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(json(&a)["envelope"].as_f64().unwrap() > 0.0);
}

#[test]
fn variance_and_distribution() {
    let data = data_file();
    let v = json(&run(&["variance", "--alpha", "0.5", "--T", "5", "--spectral", &data, "--tmax", "60"]));
    for key in ["empirical", "spectral_value", "spectral_tail", "ratio"] {
        assert!(v[key].as_f64().unwrap() > 0.0, "{key}");
    }
    let dir = tempfile::tempdir().unwrap();
    let hist = dir.path().join("h.csv");
    let d = json(&run(&[
        "distribution", "--mode", "synthetic", "--alpha", "0.25", "--spectral", &data, "--L", "2000", "--bins", "20", "--out",
        hist.to_str().unwrap(),
    ]));
    assert_eq!(d["bins"], 20);
    let rows = std::fs::read_to_string(&hist).unwrap();
    let total: u64 = rows.lines().skip(1).map(|l| l.rsplit(',').next().unwrap().parse::<u64>().unwrap()).sum();
    assert_eq!(total, d["count"].as_u64().unwrap());
    let missing = run(&["distribution", "--mode", "synthetic", "--alpha", "0.25", "--out", hist.to_str().unwrap()]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn hybrid_schedules() {
    let v = json(&run(&["hybrid", "--Ts", "4,5", "--window", "0T", "--bound", "0.2"]));
    assert_eq!(v["variance"].as_array().unwrap().len(), 2);
    let bad = run(&["hybrid", "--schedule", "inv", "--Ts", "6,9,12", "--window", "0T"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("schedule"));
}

#[test]
fn shc_fields() {
    let v = json(&run(&["shc", "--s", "5", "--t", "3"]));
    let (d, c) = (v["direct"].as_f64().unwrap(), v["closed_form"].as_f64().unwrap());
    assert!((d - c).abs() < 1e-8 * d.abs());
    let v = json(&run(&["shc", "--s", "2", "--t", "6", "--alpha", "0.5"]));
    let (d, c) = (v["direct"].as_f64().unwrap(), v["closed_form"].as_f64().unwrap());
    assert!((d - c).abs() < 1e-8);
    assert!(v["asymptotic"].is_f64());
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["count", "--z", "0,-1", "--s", "1"]).status.code(), Some(2));
    assert_eq!(run(&["count", "--s", "-1"]).status.code(), Some(2));
    assert_eq!(run(&["shc", "--s", "3", "--t", "0"]).status.code(), Some(2));
    assert!(!Path::new("/nonexistent/x.csv").exists());
    assert_eq!(run(&["moments", "--in", "/nonexistent/x.csv", "--T", "1"]).status.code(), Some(2));
}
