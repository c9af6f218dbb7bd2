//! End-to-end checks of the `aoi` binary: outputs, exit codes, determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn aoi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aoi"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn tmp(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("aoi-cli-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn mean_prints_closed_form_value() {
    let out = aoi(&["mean", "--lambda", "1", "--theta", "inf", "--dist", "exp:1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("mean_aoi = 2.0000000"), "{text}");
    assert!(text.contains("p0 = 1.0"), "{text}");
}

#[test]
fn mean_json_format() {
    let out = aoi(&[
        "mean", "--lambda", "1", "--theta", "0", "--dist", "det:1", "--format", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let mean = v["mean_aoi"].as_f64().unwrap();
    assert!((mean - 2.167653).abs() < 1e-5, "{mean}");
}

#[test]
fn transform_csv_has_header_and_grid() {
    let out = aoi(&[
        "transform", "--lambda", "1", "--theta", "0.5", "--dist", "det:1", "--s-grid", "0.5:2:4",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "s,phi");
    assert_eq!(lines.len(), 5);
    assert!(lines[1].starts_with("5.000000000000e-1,"));
}

#[test]
fn tail_threshold_search() {
    let out = aoi(&[
        "tail", "--lambda", "1", "--theta", "inf", "--dist", "exp:1", "--epsilon", "0.01",
        "--format", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let nu = v["nu"].as_f64().unwrap();
    assert!(nu > 5.0 && nu < 9.0, "99th percentile ~ 6.6, got {nu}");
}

#[test]
fn sweep_csv_includes_endpoints_and_inf_literal() {
    let out = aoi(&[
        "sweep", "--lambda", "1", "--dist", "exp:1", "--theta-grid", "1,2",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("theta,mean_aoi\n0,"), "{text}");
    let last = text.lines().last().unwrap();
    assert!(last.starts_with("inf,2.000000"), "{last}");
}

#[test]
fn simulate_writes_json_and_ccdf_csv_deterministically() {
    let json_a = tmp("sim-a.json");
    let json_b = tmp("sim-b.json");
    for path in [&json_a, &json_b] {
        let out = aoi(&[
            "simulate", "--lambda", "1", "--theta", "0.5", "--dist", "det:1", "--events",
            "20000", "--reps", "2", "--seed", "7", "--out", path.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let a = std::fs::read(&json_a).unwrap();
    let b = std::fs::read(&json_b).unwrap();
    assert_eq!(a, b, "same spec and seed must be byte-identical");
    let v: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert!(v["mean_aoi"].as_f64().unwrap() > 1.0);
    let csv = std::fs::read_to_string(json_a.with_extension("csv")).unwrap();
    assert!(csv.starts_with("nu,prob\n"), "{csv}");
    for p in [json_a.clone(), json_b.clone(), json_a.with_extension("csv"), json_b.with_extension("csv")] {
        let _ = std::fs::remove_file(p);
    }
}

#[test]
fn simulate_threads_flag_matches_sequential_output() {
    let seq = aoi(&[
        "simulate", "--lambda", "0.8", "--theta", "1", "--dist", "mix:0.5,det=1,exp=1",
        "--events", "20000", "--reps", "3", "--seed", "21", "--threads", "1",
    ]);
    let par = aoi(&[
        "simulate", "--lambda", "0.8", "--theta", "1", "--dist", "mix:0.5,det=1,exp=1",
        "--events", "20000", "--reps", "3", "--seed", "21", "--threads", "3",
    ]);
    assert!(seq.status.success() && par.status.success());
    assert_eq!(stdout(&seq), stdout(&par));
}

#[test]
fn validate_passes_on_consistent_model() {
    let out = aoi(&[
        "validate", "--lambda", "1", "--theta", "0.5", "--dist", "det:1", "--events",
        "100000", "--reps", "4", "--seed", "9",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    assert!(stdout(&out).contains("overall: PASS"));
}

#[test]
fn malformed_spec_exits_two_with_json_error() {
    let out = aoi(&["mean", "--lambda", "1", "--theta", "inf", "--dist", "gauss:1"]);
    assert_eq!(out.status.code(), Some(2));
    let err: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&out.stderr).trim()).unwrap();
    assert_eq!(err["code"], 2);
    assert!(err["error"].as_str().unwrap().contains("gauss"));
}

#[test]
fn missing_flags_exit_two() {
    let out = aoi(&["mean", "--lambda", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

fn first_mean(out: &Output) -> f64 {
    stdout(out)
        .lines()
        .next()
        .unwrap()
        .strip_prefix("mean_aoi = ")
        .unwrap()
        .parse()
        .unwrap()
}

#[test]
fn config_file_supplies_defaults_flags_win() {
    let cfg = tmp("config.toml");
    std::fs::write(
        &cfg,
        "lambda = 1.0\ntheta = \"inf\"\ndist = \"exp:1\"\n",
    )
    .unwrap();
    // All values from config.
    let out = aoi(&["mean", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success());
    assert!((first_mean(&out) - 2.0).abs() < 1e-6);
    // Flag overrides the config lambda: mean becomes 1/mu + 1/lambda = 3.
    let out = aoi(&["mean", "--config", cfg.to_str().unwrap(), "--lambda", "0.5"]);
    assert!(out.status.success());
    assert!((first_mean(&out) - 3.0).abs() < 1e-6, "{}", stdout(&out));
    let _ = std::fs::remove_file(cfg);
}

#[test]
fn dist_literal_round_trips_through_model_display() {
    for lit in ["exp:2", "det:1.5", "mix:0.25,det=2,exp=0.5"] {
        let out = aoi(&["mean", "--lambda", "0.7", "--theta", "1", "--dist", lit, "--format", "json"]);
        assert!(out.status.success(), "{lit}");
    }
}
