//! End-to-end tests of the binary: exit codes, report contents and
//! byte-level determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_waci"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON report")
}

fn write_file(name: &str, content: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("waci-cli-test-{name}"));
    std::fs::write(&path, content).unwrap();
    path
}

const EL3: &str = "[ring]\nvariables = x1, x2, x3\nweights = 2, 2, 2\n\n[relations]\nx1^2 - x3^2\nx2^2 - x3^2\nx1*x2*x3\n";
const SPLIT21: &str = "[ring]\nvariables = x1, x2\nweights = 2, 2\n\n[relations]\nx1^2 - x2^2\nx2^4\n";

#[test]
fn analyze_el3() {
    let f = write_file("el3.waci", EL3);
    let out = run(&["analyze", f.to_str().unwrap()]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["is_waci"], true);
    assert_eq!(v["formal_dimension"], 8);
    assert_eq!(v["middle_signature"], 4);
    assert_eq!(v["integrality"], true);
    assert_eq!(v["simplicity"]["simple"], true);
    assert_eq!(v["pi1"]["3"], 2);
    assert_eq!(v["pi1"]["5"], 1);
}

#[test]
fn family_round_trip() {
    let out_path = std::env::temp_dir().join("waci-cli-test-roundtrip.waci");
    let out = run(&[
        "family",
        "el",
        "--n",
        "3",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let analyzed = run(&["analyze", out_path.to_str().unwrap()]);
    assert!(analyzed.status.success());
    let v = json(&analyzed);
    assert_eq!(v["total_dimension"], 12);
    assert_eq!(v["k"], 3);
}

#[test]
fn deterministic_reports() {
    let f = write_file("det.waci", SPLIT21);
    let a = run(&["analyze", f.to_str().unwrap()]);
    let b = run(&["analyze", f.to_str().unwrap()]);
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn geodesic_two_factors() {
    let f1 = write_file("geo-el3.waci", EL3);
    let f2 = write_file("geo-split21.waci", SPLIT21);
    let out = run(&["geodesic", f1.to_str().unwrap(), f2.to_str().unwrap()]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["k"], 4);
    assert!(v["conclusion"]
        .as_str()
        .unwrap()
        .contains("obstruction applies"));
}

#[test]
fn simple_negative_exit_code() {
    // a tensor square has a two-dimensional space of degree-0 derivations
    let f = write_file(
        "notsimple.waci",
        "[ring]\nvariables = x, y\nweights = 2, 2\n\n[relations]\nx^3\ny^3\n",
    );
    let out = run(&["simple", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["result"]["simple"], false);
}

#[test]
fn smooth_obstructed_exit_code() {
    let f = write_file(
        "a3.waci",
        "[ring]\nvariables = x\nweights = 6\n\n[relations]\nx^3\n",
    );
    let out = run(&["smooth", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert!(v["result"]["verdict"]["obstructed"]
        .as_str()
        .unwrap()
        .contains("31"));
}

#[test]
fn signature_report() {
    let f = write_file("sig-split.waci", SPLIT21);
    let out = run(&["signature", f.to_str().unwrap()]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["signature"], 0);
    assert_eq!(v["integrality"], true);
}

#[test]
fn oracle_monomial_search() {
    let out = run(&["oracle", "monomial-search", "--cycles", "4", "--bound", "10"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["unimodular_pair_found"], false);
    assert_eq!(v["conclusion"], "no unimodular pair found");
}

#[test]
fn oracle_derivation_and_congruence() {
    let f = write_file("oracle-el3.waci", EL3);
    let out = run(&["oracle", "derivation", f.to_str().unwrap(), "--degree", "0"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["leibniz_verified"], true);
    assert_eq!(v["dimension"], 1);

    let out = run(&["oracle", "congruence", f.to_str().unwrap()]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["consistent"], true);
    assert_eq!(v["residue_test"], true);
}

#[test]
fn input_errors_exit_two() {
    let out = run(&["analyze", "/nonexistent/file.waci"]);
    assert_eq!(out.status.code(), Some(2));

    let f = write_file(
        "bad.waci",
        "[ring]\nvariables = x\nweights = 2\n\n[relations]\nx^2 +\n",
    );
    let out = run(&["analyze", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert!(v["error"].as_str().unwrap().contains("parse error"));

    // inhomogeneous relation is a presentation error
    let f = write_file(
        "inhom.waci",
        "[ring]\nvariables = x\nweights = 2\n\n[relations]\nx^2 + x\n",
    );
    let out = run(&["analyze", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn derive_reports_euler() {
    let f = write_file("derive-el3.waci", EL3);
    let out = run(&["derive", f.to_str().unwrap(), "--degree", "0"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["dimension"], 1);
    assert_eq!(v["contains_euler"], true);

    let out = run(&["derive", f.to_str().unwrap(), "--degree", "-2"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["dimension"], 0);
}

#[test]
fn timing_flag_adds_field() {
    let f = write_file("timing.waci", SPLIT21);
    let plain = json(&run(&["homotopy", f.to_str().unwrap()]));
    assert!(plain.get("timing_ms").is_none());
    let timed = json(&run(&["--timing", "homotopy", f.to_str().unwrap()]));
    assert!(timed.get("timing_ms").is_some());
}
