use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mathieu")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let out = run(args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (v, out.status.code().unwrap())
}

fn value(v: &Value) -> f64 {
    v["results"][0]["value"].as_f64().unwrap()
}

#[test]
fn eval_apery_at_origin() {
    let (v, code) = json(&["eval", "S_mu", "--mu", "1", "--r", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema_version"], "1");
    assert_eq!(v["command"], "eval");
    assert!((value(&v) - 2.404_113_806_3).abs() < 1e-10);
}

#[test]
fn eval_scalar_functions() {
    let (v, _) = json(&["eval", "zeta", "--s", "2"]);
    assert!((value(&v) - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-13);
    let (v, _) = json(&["eval", "K", "--t", "3.141592653589793"]);
    assert!((value(&v) - std::f64::consts::PI * std::f64::consts::LN_2).abs() < 1e-11);
    let (v, _) = json(&["eval", "besselj", "--nu", "0.5", "--x", "1"]);
    let j = (2.0 / std::f64::consts::PI).sqrt() * 1f64.sin();
    assert!((value(&v) - j).abs() < 1e-12);
}

#[test]
fn json_floats_round_trip_bit_exact() {
    let out = run(&["eval", "S", "--r", "0.7"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    let x = value(&v);
    let again = serde_json::to_string(&serde_json::json!(x)).unwrap();
    let back: f64 = serde_json::from_str(&again).unwrap();
    assert_eq!(back.to_bits(), x.to_bits());
    // 17 significant digits are printed
    let field = text.lines().find(|l| l.contains("\"value\"")).unwrap();
    let mantissa = field.split(':').nth(1).unwrap().trim().trim_end_matches(',');
    let digits = mantissa.split(['e', 'E']).next().unwrap().chars().filter(char::is_ascii_digit).count();
    assert_eq!(digits, 17, "{mantissa}");
}

#[test]
fn output_is_deterministic_apart_from_timing() {
    let args = ["verify", "--check", "turan_mathieu", "--grid", "mu=1:2:2,r=0.5/1"];
    let (mut a, _) = json(&args);
    let (mut b, _) = json(&args);
    a["timing_ms"] = Value::Null;
    b["timing_ms"] = Value::Null;
    assert_eq!(a, b);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["eval", "zeta", "--s", "1"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "S_mu", "--mu", "-1", "--r", "1"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--check", "no_such_check"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--check", "alzer", "--grid", "q=1"]).status.code(), Some(2));
    // a tolerance tighter than the quadrature can reach
    assert_eq!(run(&["eval", "K_mu", "--mu", "2", "--t", "1", "--tol", "1e-17"]).status.code(), Some(3));
    // Kimberling is an adjudication, so its known failure does not fail the run
    assert_eq!(run(&["verify", "--check", "kimberling", "--grid", "mu=1,nu=1,r=1"]).status.code(), Some(0));
}

#[test]
fn verify_turan_grid() {
    let (v, code) = json(&["verify", "--check", "turan_mathieu", "--grid", "mu=0.5:3:4,r=0.1:10:4:log"]);
    assert_eq!(code, 0);
    let s = &v["results"][0];
    assert_eq!(s["reports"].as_array().unwrap().len(), 16);
    assert!(s["failures"].as_array().unwrap().is_empty());
}

#[test]
fn verify_csv_rows() {
    let out = run(&["verify", "--check", "zeta_turan", "--grid", "mu=2/3", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rows = csv::Reader::from_reader(text.as_bytes());
    let headers = rows.headers().unwrap().clone();
    assert_eq!(&headers[0], "check");
    let recs: Vec<_> = rows.records().map(Result::unwrap).collect();
    assert_eq!(recs.len(), 2);
    let margin: f64 = recs[0][headers.iter().position(|h| h == "margin").unwrap()].parse().unwrap();
    assert!((margin - 0.335_41).abs() < 1e-4, "{margin}");
}

#[test]
fn constants_defaults() {
    let (v, code) = json(&["constants"]);
    assert_eq!(code, 0);
    let r = &v["results"][0];
    let c = r["C_mu_of_r"].as_f64().unwrap();
    assert!((c - (std::f64::consts::PI / 2.0).sqrt()).abs() < 1e-12);
    assert_eq!(r["c_L_agree"], true);
}

#[test]
fn xcheck_methods_agree() {
    let (v, code) = json(&["xcheck", "--mu", "1", "--r", "1", "--methods", "direct,emersleben,bessel"]);
    assert_eq!(code, 0);
    let res = v["results"].as_array().unwrap();
    assert!(res.iter().filter(|x| x.get("consistent").is_some()).all(|x| x["consistent"] == true));
    assert_eq!(run(&["xcheck", "--mu", "2", "--r", "1", "--methods", "emersleben"]).status.code(), Some(2));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("o.json");
    let out = run(&["eval", "gamma", "--x", "5", "--out", path.to_str().unwrap()]);
    assert!(out.status.success() && out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(Path::new(&path)).unwrap()).unwrap();
    assert!((value(&v) - 24.0).abs() < 1e-11);
}
