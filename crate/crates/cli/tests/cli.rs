use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn fixture(name: &str) -> String {
    fixtures().join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperlin"))
        .args(args)
        .env_remove("HYPERLIN_FIXTURES")
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn check_h_units_reports_nullity_six() {
    let r = report(&run(&["check", &fixture("h_units.json")]));
    assert_eq!(r["command"], "check");
    assert_eq!(r["results"]["nullity_A_GH"], 6);
    let checks = r["theorem_checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["status"] != "fail"));
}

#[test]
fn check_passes_on_every_shipped_hypergraph() {
    for name in [
        "h_a.json",
        "h_eq.json",
        "h_circ_4.json",
        "h_circ_5.json",
        "h_lower_5.json",
        "h_cov.json",
        "h_cov_base.json",
    ] {
        let out = run(&["check", &fixture(name)]);
        assert_eq!(out.status.code(), Some(0), "{name}: {}", stderr(&out));
    }
}

#[test]
fn certify_h_a_alternating_square() {
    let r = report(&run(&["certify", &fixture("h_a.json"), "--set", "1,2,3,4", "--axis", "vertices"]));
    let cert = &r["results"]["certificate"];
    assert_eq!(r["results"]["dependent"], true);
    let coeffs: Vec<&str> = ["1", "2", "3", "4"]
        .iter()
        .map(|v| cert["coefficients"][v].as_str().unwrap())
        .collect();
    assert_eq!(coeffs, ["1", "-1", "1", "-1"]);
}

#[test]
fn circulant_four_determinant() {
    let r = report(&run(&["spectra", &fixture("h_circ_4.json"), "--matrix", "I", "--det"]));
    assert_eq!(r["results"]["determinant"], "-3");
}

#[test]
fn output_is_byte_identical_across_runs() {
    let h_a = fixture("h_a.json");
    let cases: [&[&str]; 3] = [
        &["walk", &h_a, "--seed", "7", "--steps", "6", "--trajectories", "2000", "--target", "1"],
        &["centrality", &h_a, "--kind", "betweenness", "--horizon", "4"],
        &["spectra", &h_a, "--matrix", "L", "--weights", "edgenorm"],
    ];
    for args in cases {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn missing_file_is_input_error() {
    let out = run(&["units", "/nonexistent/h.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
}

#[test]
fn malformed_file_is_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, "{\"vertices\": [").unwrap();
    let out = run(&["units", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("bad.json"));
}

#[test]
fn unknown_flag_is_input_error() {
    let out = run(&["units", &fixture("h_a.json"), "--bogus"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["spectra", &fixture("h_a.json"), "--weights", "heavy"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn precondition_failures_exit_two_with_error_name() {
    let out = run(&["certify", &fixture("h_a.json"), "--set", "1,zz"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("UnknownLabel"), "{}", stderr(&out));

    let out = run(&["spectra", &fixture("h_units.json"), "--matrix", "I", "--det"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("NotSquare"), "{}", stderr(&out));

    // lower-triangular hypergraphs contain a singleton hyperedge
    let out = run(&["hitting", &fixture("h_lower_5.json"), "--target", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("SingletonEdgeNonLazy"), "{}", stderr(&out));
}

#[test]
fn lines_format_matches_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tri.txt");
    fs::write(&path, "e1: a b\ne2: b c\ne3: a c\n").unwrap();
    let from_lines = report(&run(&["hitting", path.to_str().unwrap(), "--target", "c"]));
    assert_eq!(from_lines["results"]["hitting_times"]["times"]["a"], "2");
    assert_eq!(from_lines["results"]["hitting_times"]["times"]["c"], "3");

    let json_path = dir.path().join("tri.json");
    fs::write(
        &json_path,
        r#"{"vertices":["a","b","c"],"hyperedges":{"e1":["a","b"],"e2":["b","c"],"e3":["a","c"]}}"#,
    )
    .unwrap();
    let from_json = report(&run(&["hitting", json_path.to_str().unwrap(), "--target", "c"]));
    assert_eq!(from_lines["input_digest"], from_json["input_digest"]);
}

#[test]
fn fixture_directory_lookup() {
    let out = Command::new(env!("CARGO_BIN_EXE_hyperlin"))
        .args(["units", "h_units"])
        .env("HYPERLIN_FIXTURES", fixtures())
        .output()
        .unwrap();
    let r = report(&out);
    assert_eq!(r["command"], "units");
}

#[test]
fn raw_dot_for_projection() {
    let out = run(&["dot", &fixture("h_units.json"), "--which", "projection", "--raw"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("graph "));
    assert!(text.trim_end().ends_with('}'));
}

#[test]
fn cover_pulls_back_certificates() {
    let r = report(&run(&[
        "cover",
        &fixture("h_cov.json"),
        "--base",
        &fixture("h_cov_base.json"),
        "--map",
        &fixture("h_cov_map.json"),
    ]));
    assert_eq!(r["results"]["classification"], "CardinalityPreservingCovering");
    assert!(!r["results"]["pullbacks"].as_array().unwrap().is_empty());
}
