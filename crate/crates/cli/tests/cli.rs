//! End-to-end tests of the `ms` binary: output formats, exit codes and
//! determinism.

use std::path::Path;
use std::process::{Command, Output};

fn ms(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ms"))
        .args(args)
        .output()
        .expect("failed to launch ms")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn parse_csv(text: &str) -> Vec<Vec<f64>> {
    text.lines()
        .skip_while(|l| l.starts_with('#'))
        .skip(1) // header
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect()
}

fn write(path: &Path, content: &str) {
    std::fs::write(path, content).unwrap();
}

#[test]
fn eval_matern_norm_table_is_exponential() {
    let out = ms(&["eval", "--kernel", "matern-norm", "--alpha", "0.5", "--grid", "0:5:0.5"]);
    assert!(out.status.success());
    let rows = parse_csv(&stdout(&out));
    assert_eq!(rows.len(), 11);
    for row in rows {
        assert!((row[1] - (-row[0]).exp()).abs() < 1e-12, "{row:?}");
    }
}

#[test]
fn eval_single_values_and_fourier() {
    let out = ms(&["eval", "--kernel", "imq", "--beta", "1", "--z", "1"]);
    assert!(out.status.success());
    assert_eq!(parse_csv(&stdout(&out))[0][1], 0.5);

    let out = ms(&[
        "eval", "--kernel", "g", "--alpha", "1", "--n", "3", "--fourier", "--xi", "1",
    ]);
    assert!(out.status.success());
    let v = parse_csv(&stdout(&out))[0][1];
    assert!((v - 0.5).abs() < 1e-6, "{v}");
}

#[test]
fn eval_bad_parameters_exit_2() {
    let out = ms(&["eval", "--kernel", "nope", "--z", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = ms(&["eval", "--kernel", "imq", "--z", "1"]); // missing --beta
    assert_eq!(out.status.code(), Some(2));
    let out = ms(&["eval", "--kernel", "imq", "--beta", "1", "--grid", "0:1"]);
    assert_eq!(out.status.code(), Some(2));
    // raw matern has no catalog Fourier transform
    let out = ms(&["eval", "--kernel", "matern", "--alpha", "1", "--fourier", "--xi", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn transform_forward_matches_binomial() {
    let out = ms(&["transform", "--alpha", "1", "--lambda", "0", "--grid", "0:2:0.5"]);
    assert!(out.status.success());
    for row in parse_csv(&stdout(&out)) {
        let expect = (1.0 + row[0] * row[0]).powi(-2);
        assert!((row[1] - expect).abs() < 1e-6 * expect, "{row:?}");
    }
}

#[test]
fn transform_inverse_recovers_weight_density() {
    let out = ms(&["transform", "--alpha", "1", "--lambda", "0", "--grid", "0.5:2:0.5", "--inverse"]);
    assert!(out.status.success());
    let rows = parse_csv(&stdout(&out));
    // density K_1(t) t^2 / 2; spot value at t = 1: K_1(1)/2
    let k11 = 0.601907230197234f64; // K_1(1)
    let spot = rows.iter().find(|r| r[0] == 1.0).unwrap();
    assert!((spot[1] - k11 / 2.0).abs() < 1e-5, "{spot:?}");
}

#[test]
fn certify_progression_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let pts = dir.path().join("pts.csv");
    write(&pts, "0\n5\n10\n15\n20\n");
    let out = ms(&[
        "certify", "--kernel", "matern-norm", "--alpha", "0.5",
        "--points", pts.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["decision"], "bounded_invertible");
    assert!((v["threshold"].as_f64().unwrap() - 4.0).abs() < 1e-10);
    assert_eq!(v["delta"], 5.0);

    // 1-D step 4 with imq(1): below the 2 pi threshold
    write(&pts, "0\n4\n8\n12\n");
    let out = ms(&["certify", "--kernel", "imq", "--beta", "1", "--points", pts.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["decision"], "bounded_only");

    // duplicate points: exit 3 naming the pair
    write(&pts, "0\n4\n0\n");
    let out = ms(&["certify", "--kernel", "imq", "--beta", "1", "--points", pts.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains('0') && err.contains('2'), "{err}");
}

#[test]
fn certify_2d_dimension_rule() {
    let dir = tempfile::tempdir().unwrap();
    let pts = dir.path().join("pts.csv");
    let mut body = String::new();
    for i in 0..5 {
        for j in 0..5 {
            body.push_str(&format!("{},{}\n", 0.5 * i as f64, 0.5 * j as f64));
        }
    }
    write(&pts, &body);
    let out = ms(&[
        "certify", "--kernel", "matern-norm", "--alpha", "1",
        "--points", pts.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["decision"], "bounded_invertible");
    assert_eq!(v["d"], 2);
}

#[test]
fn certify_riesz_space() {
    let dir = tempfile::tempdir().unwrap();
    let pts = dir.path().join("pts.csv");
    write(&pts, "0\n8\n16\n24\n");
    let out = ms(&[
        "certify", "--kernel", "imq", "--beta", "1", "--space", "kspace",
        "--points", pts.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    // threshold 2 B(1/2, 1/2) = 2 pi < 8
    assert_eq!(v["decision"], "bounded_invertible");
    assert!((v["threshold"].as_f64().unwrap() - 2.0 * std::f64::consts::PI).abs() < 1e-10);
}

#[test]
fn certify_seeded_generation_is_deterministic() {
    let a = ms(&["certify", "--kernel", "matern-norm", "--alpha", "1", "--seed", "42"]);
    let b = ms(&["certify", "--kernel", "matern-norm", "--alpha", "1", "--seed", "42"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = ms(&["certify", "--kernel", "matern-norm", "--alpha", "1", "--seed", "43"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn interpolate_two_point_hand_case() {
    let dir = tempfile::tempdir().unwrap();
    let pts = dir.path().join("pts.csv");
    let smp = dir.path().join("smp.csv");
    write(&pts, "0\n1\n");
    let e = (-1.0f64).exp();
    write(&smp, &format!("1\n{e}\n"));
    let out = ms(&[
        "interpolate", "--kernel", "matern-norm", "--alpha", "0.5",
        "--points", pts.to_str().unwrap(), "--samples", smp.to_str().unwrap(),
        "--grid", "0:1:0.5",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.starts_with("# kernel="), "{text}");
    assert!(text.contains("solve_residual="));
    let rows = parse_csv(&text);
    assert!((rows[0][1] - 1.0).abs() < 1e-10); // node reproduction at 0
    assert!((rows[2][1] - e).abs() < 1e-10); // node reproduction at 1
    let mid = rows[1][1];
    assert!(mid > e && mid < 1.0, "midpoint {mid} outside (e^-1, 1)");
}

#[test]
fn interpolate_mismatched_counts_exit_4() {
    let dir = tempfile::tempdir().unwrap();
    let pts = dir.path().join("pts.csv");
    let smp = dir.path().join("smp.csv");
    write(&pts, "0\n1\n2\n");
    write(&smp, "1\n2\n");
    let out = ms(&[
        "interpolate", "--kernel", "matern-norm", "--alpha", "0.5",
        "--points", pts.to_str().unwrap(), "--samples", smp.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn interpolate_missing_file_exit_3() {
    let out = ms(&[
        "interpolate", "--kernel", "matern-norm", "--alpha", "0.5",
        "--points", "/nonexistent/p.csv", "--samples", "/nonexistent/s.csv",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_reports_and_exit_codes() {
    let out = ms(&["verify"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["all_pass"], true);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.len() >= 8);
    for c in checks {
        assert_eq!(c["pass"], true, "{c}");
        assert!(c["residual"].as_f64().unwrap() <= c["tolerance"].as_f64().unwrap());
    }
    // impossible tolerance scale forces exit code 1
    let out = ms(&["verify", "--tol", "1e-30"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn output_file_and_stdout_agree() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let piped = ms(&["eval", "--kernel", "imq", "--beta", "2", "--grid", "0:2:1"]);
    let filed = ms(&[
        "eval", "--kernel", "imq", "--beta", "2", "--grid", "0:2:1",
        "--out", path.to_str().unwrap(),
    ]);
    assert!(piped.status.success() && filed.status.success());
    assert!(filed.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout(&piped));
}

#[test]
fn quad_panel_env_override_is_validated() {
    let out = Command::new(env!("CARGO_BIN_EXE_ms"))
        .args(["eval", "--kernel", "matern-norm", "--alpha", "1", "--fourier", "--xi", "1", "--n", "1"])
        .env("MS_QUAD_MAX_PANELS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2)); // below the minimum of 16
    let out = Command::new(env!("CARGO_BIN_EXE_ms"))
        .args(["eval", "--kernel", "matern-norm", "--alpha", "1", "--fourier", "--xi", "1", "--n", "1"])
        .env("MS_QUAD_MAX_PANELS", "200")
        .output()
        .unwrap();
    assert!(out.status.success());
}
