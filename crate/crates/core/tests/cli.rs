use std::process::Command;

use riesz_cover::cli::{Outcome, Report};

fn riesz(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_riesz"))
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned(), String::from_utf8_lossy(&out.stderr).into_owned())
}

fn json_report(args: &[&str]) -> (i32, Report) {
    let mut full = args.to_vec();
    full.extend(["--report", "json"]);
    let (code, out, err) = riesz(&full);
    (code, serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out} {err}")))
}

#[test]
fn embed_report() {
    let (code, r) = json_report(&["run", "--space", "data/k4.json", "--op", "embed", "--args", r#"{"x": "v2"}"#]);
    assert_eq!(code, 0);
    assert_eq!(r.result, serde_json::json!("(0,0,2,2)"));
    assert!(r.exact);
}

#[test]
fn order_density_exits_two_with_witness() {
    let args = r#"{"L": {"image": {"ideal": ["v1", "v4"]}}, "J": {"ext_ideal": ["v1", "v4"]}, "probe": ["1", "0", "1", "0"]}"#;
    let (code, r) = json_report(&["run", "--space", "data/k4.json", "--op", "order-dense", "--args", args]);
    assert_eq!(code, 2);
    assert_eq!(r.outcome, Outcome::NegativeWithWitness);
    assert_eq!(r.witness, Some(serde_json::json!("(1,0,1,0)")));
}

#[test]
fn reports_are_byte_stable() {
    let args = ["run", "--space", "data/k4.json", "--op", "ext-band", "--args", r#"{"S": ["v1", "v4"]}"#, "--report", "json"];
    let (_, a, _) = riesz(&args);
    let (_, b, _) = riesz(&args);
    assert_eq!(a, b);
    let r: Report = serde_json::from_str(&a).unwrap();
    assert_eq!(serde_json::to_string_pretty(&r).unwrap().trim(), a.trim());
}

#[test]
fn empty_band_is_zero() {
    let (code, r) = json_report(&["run", "--space", "data/k4.json", "--op", "band", "--args", r#"{"S": []}"#]);
    assert_eq!(code, 0);
    assert_eq!(r.result["subspace"], serde_json::json!("{0}"));
}

#[test]
fn errors_exit_one() {
    let (code, _, err) = riesz(&["run", "--space", "data/k4.json", "--op", "frobnicate"]);
    assert_eq!(code, 1);
    assert!(err.contains("unknown operation"));
    let dir = std::env::temp_dir().join("riesz-cli-parse-test.json");
    std::fs::write(&dir, "{\n  \"dim\": 3,\n  \"cone\": {\"generators\": [[\"1\", \"0\" \"1\"]]}\n}\n").unwrap();
    let (code, _, err) = riesz(&["run", "--space", dir.to_str().unwrap(), "--op", "info"]);
    assert_eq!(code, 1);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn function_ops() {
    let (code, r) = json_report(&["run", "--carrier", "c1-pp2", "--op", "majorized", "--in", "data/ex2_majorized.json"]);
    assert_eq!(code, 2);
    assert!(r.witness.unwrap()["certificate"]["LocalExpansion"].is_object());
    let (code, _) = json_report(&["run", "--carrier", "pp2", "--op", "majorized", "--in", "data/ex2_majorized.json"]);
    assert_eq!(code, 0);
    let (code, r) = json_report(&["run", "--carrier", "namioka", "--op", "directed", "--in", "data/namioka_band.json"]);
    assert_eq!(code, 2);
    assert_eq!(r.result["certificate_verified"], serde_json::json!(true));
}

#[test]
fn fixtures_and_properties() {
    let (code, out, _) = riesz(&["fixtures"]);
    assert_eq!(code, 0);
    assert!(out.contains("6/6 fixtures pass"));
    let (code, out, _) = riesz(&["properties", "--seed", "9", "--trials", "3", "--report", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["seed"], 9);
    let (code, _, _) = riesz(&["properties", "--trials", "0"]);
    assert_eq!(code, 1);
}
