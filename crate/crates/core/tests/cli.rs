use std::process::Command;

use ellbeta::cli::{run, EXIT_FAIL, EXIT_INPUT, EXIT_OK};
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("ellbeta").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, out, err) = call(args);
    let v = serde_json::from_str(&out).unwrap_or_else(|e| panic!("not JSON ({e}): {out} / {err}"));
    (code, v)
}

fn scrub_times(v: &mut Value) {
    match v {
        Value::Object(m) => {
            m.remove("wall_time_s");
            m.values_mut().for_each(scrub_times);
        }
        Value::Array(a) => a.iter_mut().for_each(scrub_times),
        _ => {}
    }
}

fn tmp(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("ellbeta-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn eval_theta_against_truncated_product() {
    let (code, v) = json(&["eval", "theta", "--z", "0.5", "--p", "0.3", "--json"]);
    assert_eq!(code, EXIT_OK);
    // (z;p)(p/z;p) with forty factors each
    let (z, p) = (0.5f64, 0.3f64);
    let want: f64 = (0..40).map(|k| (1.0 - z * p.powi(k)) * (1.0 - p / z * p.powi(k))).product();
    assert!((v["re"].as_f64().unwrap() - want).abs() < 1e-14);
    assert_eq!(v["im"].as_f64().unwrap(), 0.0);
    assert_eq!(v["config"]["command"], "eval");
}

#[test]
fn eval_modified_gamma_at_half_sum_is_one() {
    // G(u) G(ω₁+ω₂+ω₃-u) = 1 pins the value at the half sum
    let (code, v) = json(&["eval", "megamma", "--u", "1.2071067811865475+0.5i", "--omega", "1,1.4142135623730951,1i", "--json"]);
    assert_eq!(code, EXIT_OK);
    assert!((v["re"].as_f64().unwrap() - 1.0).abs() < 1e-10);
    assert!(v["im"].as_f64().unwrap().abs() < 1e-10);
    assert!(v["flags"].as_array().unwrap().iter().any(|f| f == "unit_circle"));
}

#[test]
fn eval_outside_domain_is_an_input_error() {
    let (code, out, err) = call(&["eval", "egamma", "--z", "0", "--q", "0.3", "--p", "0.2"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(out.is_empty());
    assert!(err.contains("z=0"), "{err}");
    let (code, v) = json(&["eval", "egamma", "--z", "0", "--q", "0.3", "--p", "0.2", "--json"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(v["error"].as_str().unwrap().contains("z=0"));
}

#[test]
fn verify_exit_codes() {
    let (code, v) = json(&["verify", "elliptic-beta", "--json"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["passed"], true);
    assert!(v["rel_error"].as_f64().unwrap() < 1e-8);

    let (code, v) = json(&["verify", "elliptic-beta", "--t", "1.2,0.5,0.5,0.5,0.5", "--json"]);
    assert_eq!(code, EXIT_INPUT);
    assert_eq!(v["passed"], false);

    // a quadrature tolerance this loose cannot meet the identity's threshold
    let (code, v) = json(&["verify", "hyperbolic-nr", "--policy-tol", "0.9", "--json"]);
    assert_eq!(code, EXIT_FAIL);
    assert_eq!(v["passed"], false);
}

#[test]
fn unknown_names_and_bad_flags_are_input_errors() {
    assert_eq!(call(&["verify", "no-such-identity"]).0, EXIT_INPUT);
    assert_eq!(call(&["suite", "no-such-suite"]).0, EXIT_INPUT);
    assert_eq!(call(&["sample", "no-such-identity"]).0, EXIT_INPUT);
    assert_eq!(call(&["eval", "theta", "--z", "abc", "--p", "0.3"]).0, EXIT_INPUT);
    assert_eq!(call(&["frobnicate"]).0, EXIT_INPUT);
    assert_eq!(call(&["--help"]).0, EXIT_OK);
}

#[test]
fn rho_suite_is_deterministic() {
    let (code, mut a) = json(&["suite", "rho", "--seed", "7", "--json"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(a["passed"], true);
    let (_, mut b) = json(&["suite", "rho", "--seed", "7", "--json"]);
    scrub_times(&mut a);
    scrub_times(&mut b);
    assert_eq!(a, b);
}

#[test]
fn sample_round_trips_through_config() {
    let (code, v) = json(&["sample", "unit-circle-beta", "--count", "2", "--seed", "3", "--json"]);
    assert_eq!(code, EXIT_OK);
    let draws = v["draws"].as_array().unwrap();
    assert_eq!(draws.len(), 2);
    let cfg = tmp("sample.json");
    std::fs::write(&cfg, serde_json::json!({ "params": draws[0] }).to_string()).unwrap();
    let out = tmp("verify.json");
    let (code, v) = json(&["verify", "unit-circle-beta", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap(), "--json"]);
    assert_eq!(code, EXIT_OK, "{v}");
    assert_eq!(v["config"]["params"], draws[0]);
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(written["rel_error"], v["rel_error"]);
}

#[test]
fn config_file_is_overridden_by_flags() {
    let cfg = tmp("seed.json");
    std::fs::write(&cfg, r#"{"seed": 11, "params": {"n": "1"}}"#).unwrap();
    let (_, v) = json(&["sample", "elliptic-beta", "--config", cfg.to_str().unwrap(), "--json"]);
    assert_eq!(v["config"]["seed"], 11);
    let (_, w) = json(&["sample", "elliptic-beta", "--config", cfg.to_str().unwrap(), "--seed", "12", "--json"]);
    assert_eq!(w["config"]["seed"], 12);
    assert_ne!(v["draws"], w["draws"]);

    std::fs::write(&cfg, r#"{"sede": 11}"#).unwrap();
    assert_eq!(call(&["suite", "rho", "--config", cfg.to_str().unwrap()]).0, EXIT_INPUT);
}

#[test]
fn binary_runs_as_a_process() {
    let bin = env!("CARGO_BIN_EXE_ellbeta");
    let ok = Command::new(bin).args(["eval", "theta1", "--u", "0.25", "--tau", "1i"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    let text = String::from_utf8(ok.stdout).unwrap();
    assert!(text.contains("\"re\""), "{text}");
    let bad = Command::new(bin).args(["verify", "elliptic-beta", "--q", "1.5"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_INPUT));
}
