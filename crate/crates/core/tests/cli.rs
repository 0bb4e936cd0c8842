//! End-to-end checks of the `raabe` binary: exit statuses, the JSON
//! schema, and exact round-tripping of serialized rationals.

use std::process::{Command, Output};
use std::str::FromStr;

use raabe::algebra::Rational;
use raabe::bernoulli::bernoulli_poly;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_raabe"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_json(args: &[&str]) -> (Option<i32>, serde_json::Value) {
    let mut full = args.to_vec();
    full.extend_from_slice(&["--format", "json"]);
    let out = run(&full);
    let doc = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("bad JSON from {args:?}: {e}"));
    (out.status.code(), doc)
}

#[test]
fn bernoulli_json_round_trips_exact_coefficients() {
    let (code, doc) = run_json(&["bernoulli", "--n", "2"]);
    assert_eq!(code, Some(0));
    assert_eq!(doc["subcommand"], "bernoulli");
    assert_eq!(doc["status"], "ok");
    assert_eq!(doc["params"]["n"], 2);

    let coeffs: Vec<String> = doc["coeffs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect();
    assert_eq!(coeffs, ["1/6", "-1", "1"]);

    // Strings parse back to the identical exact values.
    let parsed: Vec<Rational> = coeffs
        .iter()
        .map(|s| Rational::from_str(s).unwrap())
        .collect();
    assert_eq!(parsed, bernoulli_poly(2).coeffs());
}

#[test]
fn verify_raabe_reports_zero_residual() {
    let (code, doc) = run_json(&["verify-raabe", "--n", "3", "--a", "2"]);
    assert_eq!(code, Some(0));
    assert_eq!(doc["status"], "ok");
    assert!(doc["residual"].as_array().unwrap().is_empty());

    let out = run(&["verify-raabe", "--n", "3", "--a", "2"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("residual = 0"), "text output: {text}");
}

#[test]
fn verify_carlitz_reports_zero_residual() {
    let (code, doc) = run_json(&["verify-carlitz", "--n", "4", "--a", "2", "--b", "3"]);
    assert_eq!(code, Some(0));
    assert_eq!(doc["status"], "ok");
}

#[test]
fn failing_coefficient_check_exits_one_with_witness() {
    let (code, doc) = run_json(&[
        "coeff-residual",
        "--spec",
        "s2",
        "--n",
        "3",
        "--a",
        "3",
        "--kmax",
        "4096",
    ]);
    assert_eq!(code, Some(1));
    assert_eq!(doc["status"], "nonzero-residual");
    assert_eq!(doc["witness_k"], 1);
    assert!(doc["witness"].as_str().unwrap().contains("k=1"));
}

#[test]
fn passing_coefficient_check_exits_zero() {
    let (code, doc) = run_json(&[
        "coeff-residual",
        "--spec",
        "s2",
        "--n",
        "3",
        "--a",
        "2",
        "--kmax",
        "4096",
    ]);
    assert_eq!(code, Some(0));
    assert_eq!(doc["status"], "ok");
    assert!(doc.get("witness").is_none());
}

#[test]
fn kernel_prints_the_basis() {
    let (code, doc) = run_json(&["kernel", "--n", "2", "--a", "2", "--deg", "6"]);
    assert_eq!(code, Some(0));
    assert_eq!(doc["dimension"], 1);
    // B_2 normalized to lowest coefficient 1: 6X^2 - 6X + 1.
    let basis = doc["basis"].as_array().unwrap();
    let first: Vec<&str> = basis[0].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert_eq!(first, ["1", "-6", "6"]);

    let (code, doc) = run_json(&["kernel", "--n", "5", "--a", "2", "--deg", "3"]);
    assert_eq!(code, Some(0));
    assert_eq!(doc["dimension"], 0);
}

#[test]
fn lemma_subcommands_cover_both_paths() {
    let (code, doc) = run_json(&["lemma2", "--n", "4", "--a", "3", "--deg", "6"]);
    assert_eq!(code, Some(0));
    assert_eq!(doc["status"], "ok");

    let (code, doc) = run_json(&["lemma3", "--n", "4", "--a", "2", "--b", "3"]);
    assert_eq!(code, Some(0));
    assert_eq!(doc["status"], "ok");

    // X^2 is not a solution at multiplier 2: hypothesis fails, exit 0.
    let (code, doc) = run_json(&["lemma3", "--n", "2", "--a", "2", "--b", "3", "--deg", "2"]);
    assert_eq!(code, Some(0));
    assert_eq!(doc["status"], "hypothesis-not-met");
}

#[test]
fn fourier_eval_emits_the_documented_fields() {
    let (code, doc) = run_json(&[
        "fourier-eval",
        "--spec",
        "constant",
        "--n",
        "2",
        "--x",
        "0",
        "--tol",
        "1e-5",
    ]);
    assert_eq!(code, Some(0));
    let value = doc["value"].as_f64().unwrap();
    assert!((value - std::f64::consts::PI.powi(2) / 6.0).abs() < 2e-5);
    assert!(doc["truncation_N"].as_u64().unwrap() > 0);
    assert!(doc["tail_bound"].as_f64().unwrap() <= 1e-5);
}

#[test]
fn truncation_cap_env_is_honored() {
    let out = Command::new(env!("CARGO_BIN_EXE_raabe"))
        .args([
            "fourier-eval", "--spec", "constant", "--n", "2", "--x", "0.25", "--tol", "1e-6",
        ])
        .env("RAABE_TRUNCATION_CAP", "100000")
        .output()
        .expect("binary runs");
    // 1e-6 needs two million terms; the lowered cap turns this into a
    // parameter error.
    assert_eq!(out.status.code(), Some(2));

    let out = Command::new(env!("CARGO_BIN_EXE_raabe"))
        .args(["fourier-eval", "--spec", "constant", "--n", "2", "--x", "0.25"])
        .env("RAABE_TRUNCATION_CAP", "12")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2), "cap below the minimum is refused");
}

#[test]
fn log_sin_check_passes_at_loose_tolerance() {
    let (code, doc) = run_json(&[
        "log-sin-check",
        "--x",
        "0.5",
        "--tol",
        "1e-4",
        "--depth",
        "200000",
    ]);
    assert_eq!(code, Some(0));
    assert_eq!(doc["status"], "ok");

    let out = run(&["log-sin-check", "--x", "3", "--tol", "1e-4"]);
    assert_eq!(out.status.code(), Some(2), "integer x is a parameter error");
}

#[test]
fn probe_subcommands_run_clean() {
    let (code, doc) = run_json(&[
        "riemann-limit", "--n", "2", "--a", "2", "--x", "1", "--depth", "12",
    ]);
    assert_eq!(code, Some(0));
    assert!(doc["observed"].as_f64().unwrap() < 1.0);
    assert_eq!(doc["expected"].as_f64().unwrap(), 1.0);

    let (code, doc) = run_json(&[
        "dense-approx", "--value", "1.4142135623730951", "--a", "2", "--depth", "10",
    ]);
    assert_eq!(code, Some(0));
    assert_eq!(doc["r"], "1446");
    // Rationals serialize in lowest terms; compare the exact value.
    let value = Rational::from_str(doc["value"].as_str().unwrap()).unwrap();
    assert_eq!(value, Rational::new(1446.into(), 1023.into()));

    let (code, doc) = run_json(&["decompose", "--n", "2", "--value", "3"]);
    assert_eq!(code, Some(0));
    assert!((doc["sigma"].as_f64().unwrap() - 3.0).abs() < 1e-6);
}

#[test]
fn usage_errors_exit_two() {
    let out = run(&["no-such-subcommand"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["bernoulli"]); // missing --n
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["verify-raabe", "--n", "3", "--a", "0"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["bernoulli", "--n", "2", "--tol", "-1"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["fourier-eval", "--spec", "bogus", "--n", "2", "--x", "0"]);
    assert_eq!(out.status.code(), Some(2));

    // odd_part below its decay floor is a parameter error.
    let out = run(&[
        "coeff-residual", "--spec", "odd_part", "--n", "2", "--a", "2", "--kmax", "64",
    ]);
    assert_eq!(out.status.code(), Some(2));
}
