//! End-to-end checks of the command-line binary: pipeline wiring, documented
//! output contracts, and exit codes.

mod common;

use common::tvd;
use qanneal::analytic::geometric_prediction;
use serde_json::Value;
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn qanneal(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qanneal"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "expected success, got {:?}\nstderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn generate_run_trace_plot_pipeline() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();

    let gen = qanneal(
        &["generate", "--mode", "full-random", "--n", "4", "--seed", "3", "--out", "inst.json"],
        dir,
    );
    assert!(gen.status.success(), "{}", String::from_utf8_lossy(&gen.stderr));
    assert!(dir.join("inst.json").is_file());

    let run = qanneal(
        &[
            "run", "--instance", "inst.json", "--protocol", "p1", "--g", "2",
            "--trace", "trace.csv", "--out", "res.csv",
        ],
        dir,
    );
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));

    let rows: Vec<qanneal::experiments::RunRow> =
        qanneal::experiments::read_csv(&dir.join("res.csv")).unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].status, "ok");
    assert!(rows[0].p0 > 0.0 && rows[0].p0 <= 1.0);
    assert!(rows[0].norm_error < 1e-6);

    let trace = fs::read_to_string(dir.join("trace.csv")).unwrap();
    assert!(trace.lines().count() > 10, "trace has data rows");

    let plot = qanneal(
        &["plot", "--in", "trace.csv", "--kind", "trace", "--out", "trace.svg"],
        dir,
    );
    assert!(plot.status.success(), "{}", String::from_utf8_lossy(&plot.stderr));
    let svg = fs::read_to_string(dir.join("trace.svg")).unwrap();
    assert!(svg.starts_with("<svg"));
}

#[test]
fn analytic_matches_documented_example() {
    let tmp = tempfile::tempdir().unwrap();
    let out = qanneal(&["analytic", "--g", "2", "--n-qubits", "12"], tmp.path());
    let v = stdout_json(&out);
    let expected_p = (-4.0 * std::f64::consts::PI / 4096.0).exp();
    assert!((v["p"].as_f64().unwrap() - expected_p).abs() < 1e-12);
    assert_eq!(v["dim"].as_u64(), Some(4096));
    assert_eq!(v["probabilities"].as_array().unwrap().len(), 16);

    let deg = stdout_json(&qanneal(
        &["analytic", "--g", "2", "--n-qubits", "3", "--degeneracy", "2"],
        tmp.path(),
    ));
    let p_plus = deg["p_ground_level"].as_f64().unwrap();
    assert!(p_plus > deg["p0"].as_f64().unwrap());
    assert!(p_plus < 1.0);
}

#[test]
fn short_horizons_worsen_analytic_agreement() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let gen = qanneal(
        &["generate", "--mode", "full-random", "--n", "6", "--seed", "7", "--out", "inst.json"],
        dir,
    );
    assert!(gen.status.success());

    let mut tvds = Vec::new();
    for (ratio, dist) in [("5", "d5.json"), ("100", "d100.json")] {
        let run = qanneal(
            &[
                "run", "--instance", "inst.json", "--protocol", "p1", "--g", "2",
                "--ratio-T", ratio, "--out", "res.csv", "--dist", dist,
            ],
            dir,
        );
        assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
        let v: Value = serde_json::from_str(&fs::read_to_string(dir.join(dist)).unwrap()).unwrap();
        let probs: Vec<f64> = v["probabilities"]
            .as_array()
            .unwrap()
            .iter()
            .map(|p| p.as_f64().unwrap())
            .collect();
        let pred = geometric_prediction(2.0, 64).unwrap();
        tvds.push(tvd(&probs, &pred.probabilities));
    }
    assert!(
        tvds[0] > 2.0 * tvds[1],
        "ratio-T 5 should sit much farther from the closed form: {tvds:?}"
    );
    assert!(tvds[1] < 0.02);
}

#[test]
fn usage_errors_exit_one() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    for args in [
        vec!["frobnicate"],
        vec!["generate", "--mode", "range-k", "--n", "4", "--out", "x.json"],
        vec!["analytic", "--g", "-1", "--n-qubits", "4"],
        vec!["run", "--instance", "missing.json", "--protocol", "p1", "--g", "1", "--out", "r.csv"],
    ] {
        let out = qanneal(&args, dir);
        assert_eq!(out.status.code(), Some(1), "args {args:?}");
        assert!(!out.stderr.is_empty(), "args {args:?} should explain on stderr");
    }
    let help = qanneal(&["--help"], dir);
    assert_eq!(help.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&help.stdout).contains("Commands"));
}

#[test]
fn numerical_failures_exit_two() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let gen = qanneal(
        &["generate", "--mode", "full-random", "--n", "6", "--seed", "2", "--out", "inst.json"],
        dir,
    );
    assert!(gen.status.success());
    let run = qanneal(
        &[
            "run", "--instance", "inst.json", "--protocol", "p2", "--g", "2",
            "--rel-tol", "1e-3", "--out", "res.csv",
        ],
        dir,
    );
    assert_eq!(run.status.code(), Some(2), "stderr: {}", String::from_utf8_lossy(&run.stderr));
    assert!(String::from_utf8_lossy(&run.stderr).starts_with("error:"));
}

#[test]
fn sweep_is_deterministic_and_feeds_fit() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let g_list: Vec<f64> = (0..8).map(|i| 16.0f64.powf(i as f64 / 7.0)).collect();
    let spec = serde_json::json!({
        "mode": "full-random",
        "n_list": [3],
        "realizations": 2,
        "master_seed": 5,
        "protocols": ["p1"],
        "g_list": g_list,
        "ratio_t": 10.0,
        "t0_factor": 50.0
    });
    fs::write(dir.join("spec.json"), spec.to_string()).unwrap();

    for out_dir in ["a", "b"] {
        let out = qanneal(&["sweep", "--config", "spec.json", "--out-dir", out_dir], dir);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let a: Vec<qanneal::experiments::RunRow> =
        qanneal::experiments::read_csv(&dir.join("a/runs.csv")).unwrap();
    let b: Vec<qanneal::experiments::RunRow> =
        qanneal::experiments::read_csv(&dir.join("b/runs.csv")).unwrap();
    assert_eq!(a.len(), b.len());
    assert!(!a.is_empty());
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x.run_id, y.run_id);
        assert_eq!(x.p0.to_bits(), y.p0.to_bits());
        assert_eq!(x.n_bar.to_bits(), y.n_bar.to_bits());
        assert_eq!(x.steps, y.steps);
    }

    let fit = qanneal(&["fit", "--in", "a/aggregates.csv"], dir);
    let v = stdout_json(&fit);
    let entries = v.as_array().unwrap();
    assert_eq!(entries.len(), 1);
    assert!(entries[0]["alpha"].as_f64().unwrap().is_finite());
    assert_eq!(entries[0]["n_points"].as_u64(), Some(4));
}

#[test]
fn plot_draws_overlay_and_rejects_empty_input() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let spec = serde_json::json!({
        "mode": "full-random",
        "n_list": [4],
        "realizations": 2,
        "master_seed": 9,
        "protocols": ["p1", "p2", "p3"],
        "g_list": [1.0, 2.0, 4.0],
        "ratio_t": 10.0,
        "t0_factor": 50.0
    });
    fs::write(dir.join("spec.json"), spec.to_string()).unwrap();
    let sweep = qanneal(&["sweep", "--config", "spec.json", "--out-dir", "out"], dir);
    assert!(sweep.status.success(), "{}", String::from_utf8_lossy(&sweep.stderr));

    let plot = qanneal(
        &["plot", "--in", "out/aggregates.csv", "--kind", "n-vs-g", "--out", "fig.svg"],
        dir,
    );
    assert!(plot.status.success(), "{}", String::from_utf8_lossy(&plot.stderr));
    let svg = fs::read_to_string(dir.join("fig.svg")).unwrap();
    assert!(svg.matches("<path").count() >= 4, "three protocol series plus the overlay");
    assert!(svg.contains("analytic"));

    fs::write(dir.join("empty.csv"), "protocol,N,g,mean_n_bar,std_n_bar,mean_p0,mean_eps_res,n_realizations\n").unwrap();
    let bad = qanneal(&["plot", "--in", "empty.csv", "--kind", "n-vs-g", "--out", "none.svg"], dir);
    assert_ne!(bad.status.code(), Some(0));
    assert!(!dir.join("none.svg").exists(), "no file on failure");
}

#[test]
fn grover_reports_frozen_success_probability() {
    let tmp = tempfile::tempdir().unwrap();
    let v = stdout_json(&qanneal(&["grover", "--n-qubits", "6"], tmp.path()));
    assert!((v["p0"].as_f64().unwrap() - 0.9829802296262417).abs() < 1e-9);
    assert!(v["duration"].as_f64().unwrap() > 0.0);
}

#[test]
fn sector_reports_sector_weights() {
    let tmp = tempfile::tempdir().unwrap();
    let v = stdout_json(&qanneal(&["sector", "--n", "4", "--g", "1", "--seed", "5"], tmp.path()));
    assert_eq!(v["sector_dim"].as_u64(), Some(6));
    let p0 = v["p0"].as_f64().unwrap();
    assert!(p0 > 0.0 && p0 <= 1.0);
    let wrong = v["wrong_spin_fraction"].as_f64().unwrap();
    assert!((0.0..=1.0).contains(&wrong));
}

#[test]
fn classical_baseline_reports_best_visit() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let gen = qanneal(
        &["generate", "--mode", "full-random", "--n", "4", "--seed", "8", "--out", "inst.json"],
        dir,
    );
    assert!(gen.status.success());
    let v = stdout_json(&qanneal(
        &["classical", "--instance", "inst.json", "--sweeps", "64", "--seed", "1"],
        dir,
    ));
    assert!(v["eps_res"].as_f64().unwrap() >= 0.0);
    assert!(v["best_excitation"].as_u64().is_some());
    assert!(v["best_energy"].as_f64().unwrap().is_finite());
}
