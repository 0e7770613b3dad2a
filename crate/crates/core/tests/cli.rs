use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn pushcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pushcalc")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

fn scratch(name: &str, contents: &str) -> (tempfile::TempDir, PathBuf) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join(name);
    std::fs::write(&path, contents).unwrap();
    (dir, path)
}

#[test]
fn pi_degree_zero_is_one_dimensional() {
    let out = pushcalc(&["pi", "--rank", "0", "--degree", "0", "--order", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["details"][0]["dimension"], 1);
}

#[test]
fn pi_odd_degree_reports_obstruction() {
    let out = pushcalc(&["pi", "--rank", "0", "--degree", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["details"][0]["dimension"], 1);

    let out = pushcalc(&["pi", "--rank", "2", "--degree", "5"]);
    assert_eq!(report(&out)["details"][0]["dimension"], 0);
}

#[test]
fn negative_rank_is_accepted() {
    let out = pushcalc(&["pi", "--rank", "-2", "--degree", "-2", "--order", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(pushcalc(&["pi", "--rank", "0"]).status.code(), Some(2));
    assert_eq!(pushcalc(&["pi", "--bogus"]).status.code(), Some(2));
    assert_eq!(pushcalc(&["pi", "--rank", "0", "--degree", "2", "--order", "1000"]).status.code(), Some(2));
    assert_eq!(pushcalc(&["verify", "lie", "--lattice", "/nonexistent.json"]).status.code(), Some(2));
}

#[test]
fn malformed_json_exits_2() {
    let (_d, path) = scratch("bad.json", "{\"degree\": 2, ");
    let out = pushcalc(&["decompose", "--input", path.to_str().unwrap(), "--base", "pe"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn decompose_pe_class_over_itself() {
    let class = pushcalc::pushforward::xi_pe(0, 6);
    let (_d, path) = scratch("pe.json", &serde_json::to_string(&class).unwrap());
    let out = pushcalc(&["decompose", "--input", path.to_str().unwrap(), "--base", "pe"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = report(&out);
    let coeffs = v["details"][0]["element"]["coeffs"].as_array().unwrap();
    assert_eq!(coeffs.len(), 1);
    assert_eq!(coeffs[0]["terms"][0]["coeff"], "1");
}

#[test]
fn decompose_rejects_non_kernel_class() {
    let y = |j| pushcalc::GradedPoly::generator(pushcalc::Basis::Y, j);
    let class = pushcalc::pushforward::PushforwardClass::new(2, 0, vec![y(1), pushcalc::GradedPoly::zero(pushcalc::Basis::Y)]).unwrap();
    let (_d, path) = scratch("c.json", &serde_json::to_string(&class).unwrap());
    let out = pushcalc(&["decompose", "--input", path.to_str().unwrap(), "--base", "pe"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out)["pass"], false);
}

#[test]
fn failing_check_exits_1() {
    let (_d, path) = scratch("l.json", r#"{"rank": 2, "gram": [[0, -1], [-1, 0]]}"#);
    let out = pushcalc(&["verify", "lie", "--lattice", path.to_str().unwrap(), "--window", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out)["pass"], false);
}

#[test]
fn passing_check_exits_0() {
    let out = pushcalc(&["verify", "duality", "--kmax", "2", "--rank-min", "-1", "--rank-max", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["pass"], true);
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "commutator", "--samples", "3", "--rank-min", "0", "--rank-max", "1", "--order", "5"];
    let a = pushcalc(&args);
    let b = pushcalc(&args);
    assert_eq!(a.stdout, b.stdout);

    let mut one = vec!["--jobs", "1"];
    one.extend(args);
    let mut two = vec!["--jobs", "2"];
    two.extend(args);
    assert_eq!(pushcalc(&one).stdout, a.stdout);
    assert_eq!(pushcalc(&two).stdout, a.stdout);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = pushcalc(&["--out", path.to_str().unwrap(), "pi", "--rank", "1", "--degree", "4", "--order", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "pi");
}
