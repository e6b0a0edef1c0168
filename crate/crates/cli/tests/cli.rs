use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclozeta")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = run(&full);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (v, out.status.code().unwrap())
}

const A2: &str = "n=3; e={1:-1,3:1}";

#[test]
fn analyze_a2() {
    let (v, code) = json(&["analyze", A2]);
    assert_eq!(code, 0);
    assert_eq!(v["command"], "analyze");
    assert_eq!(v["status"], "pass");
    let p = &v["payload"];
    assert_eq!(p["m"], serde_json::json!([0, 1, 1]));
    assert_eq!(p["p"], serde_json::json!([2, -1, -1]));
    assert_eq!(p["p_star"], serde_json::json!([-2, 1, 1]));
}

#[test]
fn text_and_json_inputs_agree() {
    let (a, _) = json(&["analyze", A2]);
    let (b, _) = json(&["analyze", r#"{"n":3,"e":{"1":-1,"3":1}}"#]);
    assert_eq!(a["payload"]["m"], b["payload"]["m"]);
    assert_eq!(a["payload"]["p"], b["payload"]["p"]);
}

#[test]
fn dual_round_trip() {
    let out = run(&["dual", "n=6; e={1:1,2:-1,3:0,6:2}"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n=6; e={1:2,2:0,3:-1,6:1}"));
    assert_eq!(lines.next(), Some("dual: n=6; e={1:-2,2:0,3:1,6:-1}"));
}

#[test]
fn series_of_a2() {
    let out = run(&["series", A2, "--order", "6"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("m_G   1, 1, 0, 1, 1, 0"), "{text}");
    assert!(text.contains("p*_G  1, 1, -2, 1, 1, -2"), "{text}");
}

#[test]
fn parse_errors_exit_2() {
    let out = run(&["analyze", "n=3; e={1:-1,3 1}"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("column 16"));
    assert_eq!(run(&["analyze", "n=3; e={1:-1}"]).status.code(), Some(2));
    assert_eq!(run(&["weights", "1,1;3"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "example", "--index", "13"]).status.code(), Some(2));
}

#[test]
fn catalog_commands() {
    let (v, code) = json(&["catalog", "verify"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "flagged");
    let ids: Vec<&str> = v["payload"]["flags"].as_array().unwrap().iter().map(|f| f["id"].as_str().unwrap()).collect();
    assert_eq!(ids, ["catalog-X9", "catalog-J10"]);

    let (v, code) = json(&["catalog", "get", "A", "--l", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["name"], "A_4");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("catalog.json");
    assert!(run(&["catalog", "export", "--out", path.to_str().unwrap()]).status.success());
    let written = std::fs::read_to_string(&path).unwrap();
    let entries = cyclozeta_cli::catalog_data::load(&written).unwrap();
    assert_eq!(entries, cyclozeta::catalog::catalog(cyclozeta_cli::catalog_data::FAMILY_LMAX));
}

#[test]
fn weights_with_seifert() {
    let (v, code) = json(&["weights", "15,10,6;30", "--seifert", "0; 2/1,3/1,5/1"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["status"], "pass");
}

#[test]
fn seeded_suite_is_deterministic() {
    let args = ["verify", "example", "--index", "3", "--trials", "3", "--seed", "7"];
    let (a, code) = json(&args);
    let (b, _) = json(&args);
    assert_eq!(code, 0);
    assert_eq!(a, b);
    let (c, _) = json(&["verify", "example", "--index", "3", "--trials", "3", "--seed", "8"]);
    assert_ne!(a["payload"], c["payload"]);
}
