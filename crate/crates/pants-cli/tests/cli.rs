//! End-to-end tests of the `pants` binary: outputs, JSON schemas and exit codes.

use std::process::{Command, Output};

fn pants(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pants"))
        .args(args)
        .env_remove("PANTS_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(o)).expect("valid JSON")
}

const U: &str = "1,1,1,1,1,1";

#[test]
fn reconstruct_at_ones() {
    let o = pants(&["reconstruct", "--coords", "1,1,1,1,1,1,1,1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let a: Vec<Vec<f64>> = serde_json::from_value(v["holonomy"]["A"].clone()).unwrap();
    assert_eq!(a, vec![vec![1.0, 4.0, 4.0], vec![0.0, 1.0, 2.0], vec![0.0, 0.0, 1.0]]);
    assert_eq!(v["casimirs"].as_array().unwrap().len(), 6);
    let text = pants(&["reconstruct", "--coords", "1,1,1,1,1,1,1,1"]);
    assert!(stdout(&text).contains("A = ["));
}

#[test]
fn reconstruct_rejects_bad_coordinates() {
    assert_eq!(pants(&["reconstruct", "--coords", "1,0,1,1,1,1,1,1"]).status.code(), Some(2));
    assert_eq!(pants(&["reconstruct", "--coords", "1,-1,1,1,1,1,1,1"]).status.code(), Some(2));
    assert_eq!(pants(&["reconstruct", "--coords", "1,1,1"]).status.code(), Some(2));
    assert_eq!(pants(&["reconstruct", "--coords", "1,x,1,1,1,1,1,1"]).status.code(), Some(2));
}

#[test]
fn casimirs_json() {
    let v = json(&pants(&["casimirs", "--coords", "1,2,3,4,5,6,7,8", "--json"]));
    let l: Vec<f64> = serde_json::from_value(v["casimirs"].clone()).unwrap();
    // σ₁σ₄, τ₁τ₂/(σ₂σ₃), σ₃σ₆, τ₁τ₂/(σ₄σ₅), σ₂σ₅, τ₁τ₂/(σ₁σ₆)
    let want = [4.0, 56.0 / 6.0, 18.0, 56.0 / 20.0, 10.0, 56.0 / 6.0];
    for (a, b) in l.iter().zip(want) {
        assert!((a - b).abs() < 1e-14 * b);
    }
}

#[test]
fn trace_reference_values() {
    for (curve, want) in [("fig8", 35.0), ("power:3", 195.0), ("commutator", 323.0), ("theta", -26.0)] {
        let v = json(&pants(&["trace", "--leaf", U, "--point", "1,1", "--curve", curve, "--json"]));
        assert!((v["oracle"].as_f64().unwrap() - want).abs() < 1e-10, "{curve}");
        assert!((v["closed_form"].as_f64().unwrap() - want).abs() < 1e-10, "{curve}");
    }
    let w = json(&pants(&["trace", "--leaf", U, "--point", "1,1", "--curve", "word:a c^-1", "--json"]));
    assert!(w["closed_form"].is_null());
    assert!((w["oracle"].as_f64().unwrap() - 35.0).abs() < 1e-10);
}

#[test]
fn trace_rejects_unknown_curve() {
    let o = pants(&["trace", "--leaf", U, "--point", "1,1", "--curve", "bogus"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bogus"));
}

#[test]
fn fixed_point_commutator() {
    let v = json(&pants(&["fixed-point", "--leaf", U, "--curve", "commutator", "--json"]));
    let p: Vec<f64> = serde_json::from_value(v["point"].clone()).unwrap();
    assert!((p[0] - 1.0).abs() < 1e-8);
    assert!((p[1] - (33f64.sqrt() - 1.0) / 16.0).abs() < 1e-8);
    // theta has no minimum contract: a domain/usage refusal, not a crash
    assert_ne!(pants(&["fixed-point", "--leaf", U, "--curve", "theta"]).status.code(), Some(0));
}

#[test]
fn level_set_below_minimum_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ls.csv");
    let o = pants(&[
        "level-set",
        "--leaf",
        U,
        "--curve",
        "fig8",
        "--level",
        "29",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(5));
    assert!(String::from_utf8_lossy(&o.stderr).contains("below minimum"));
    assert!(!out.exists());
}

#[test]
fn level_set_closes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ls.csv");
    let svg = dir.path().join("ls.svg");
    let o = pants(&[
        "level-set",
        "--leaf",
        U,
        "--curve",
        "fig8",
        "--level",
        "35",
        "--out",
        out.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(&out).unwrap();
    let rows: Vec<(f64, f64)> = csv
        .lines()
        .skip(1)
        .map(|l| {
            let (a, b) = l.split_once(',').unwrap();
            (a.parse().unwrap(), b.parse().unwrap())
        })
        .collect();
    let (a, b) = (rows[0], rows[rows.len() - 1]);
    assert!((a.0 - b.0).hypot(a.1 - b.1) < 1e-6);
    assert!(std::fs::read_to_string(&svg).unwrap().contains("<polyline"));
}

#[test]
fn flow_csv_and_summary() {
    let o = pants(&["flow", "--fuchsian", "3,6,8", "--point", "2,1", "--curve", "fig8", "--tmax", "0.1"]);
    assert_eq!(o.status.code(), Some(0));
    let csv = stdout(&o);
    assert!(csv.starts_with("t,sigma1,tau1,f\n"));
    assert!(csv.lines().count() > 10);
    let err = String::from_utf8_lossy(&o.stderr).to_string();
    assert!(err.contains("drift") && err.contains("period"));

    let zero = pants(&["flow", "--fuchsian", "3,6,8", "--point", "2,1", "--curve", "fig8", "--tmax", "0"]);
    assert_eq!(stdout(&zero).lines().count(), 2);

    let fixed = pants(&["flow", "--leaf", U, "--point", "0.5,1", "--curve", "power:2", "--tmax", "1"]);
    for line in stdout(&fixed).lines().skip(1) {
        let v: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        assert!((v[1] - 0.5).abs() < 1e-10 && (v[2] - 1.0).abs() < 1e-10);
    }
}

#[test]
fn flow_validates_before_writing() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("f.csv");
    let o = pants(&[
        "flow",
        "--leaf",
        U,
        "--point",
        "0,1",
        "--curve",
        "fig8",
        "--tmax",
        "1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!out.exists());
}

#[test]
fn verify_all_passes_and_is_byte_stable() {
    let a = pants(&["verify", "--suite", "all", "--seed", "42", "--samples", "20", "--json"]);
    assert_eq!(a.status.code(), Some(0));
    let b = pants(&["verify", "--suite", "all", "--seed", "42", "--samples", "20", "--json", "--threads", "2"]);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 11);
    for r in reports {
        assert_eq!(r["failed"].as_u64(), Some(0));
        assert_eq!(r["seed"].as_u64(), Some(42));
        assert!(r["worst_error"].is_number());
    }
}

#[test]
fn verify_seed_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_pants"))
        .args(["verify", "--suite", "relation", "--samples", "5"])
        .env("PANTS_SEED", "7")
        .output()
        .unwrap();
    assert!(stdout(&o).contains("seed 7"));
    let bad = Command::new(env!("CARGO_BIN_EXE_pants"))
        .args(["verify", "--suite", "relation"])
        .env("PANTS_SEED", "seven")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn verify_usage_errors() {
    assert_eq!(pants(&["verify", "--suite", "nonsense"]).status.code(), Some(2));
    let empty = pants(&["verify", "--samples", "0", "--json"]);
    assert_eq!(empty.status.code(), Some(0));
    assert_eq!(json(&empty).as_array().map(Vec::len), Some(0));
    assert_eq!(pants(&["frobnicate"]).status.code(), Some(2));
}
