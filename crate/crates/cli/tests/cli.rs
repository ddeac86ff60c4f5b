use std::process::{Command, Output};

use serde_json::Value;

fn moduli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_moduli")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let out = moduli(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn all_strings(v: &Value) -> bool {
    match v {
        Value::String(_) => true,
        Value::Array(a) => a.iter().all(all_strings),
        Value::Object(m) => m.values().all(all_strings),
        _ => false,
    }
}

#[test]
fn volume_golden() {
    let v = json(&["pair", "--n", "2", "--d", "1", "--g", "2"]);
    assert_eq!(v["result"]["value"], "1/12");
    assert_eq!(v["result"]["route"], "mainab");
    assert_eq!(v["result"]["pi_exponent"], "0");
    assert_eq!(v["request"]["g"], "2");
    assert!(v.get("timing_ms").is_none());
    assert!(all_strings(&v));
}

#[test]
fn verlinde_example() {
    let out = moduli(&["verlinde", "--n", "2", "--d", "1", "--g", "2", "--k", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.split_whitespace().collect::<Vec<_>>() == ["D", "6"]), "{text}");
    assert!(text.contains("V                  6.000000"), "{text}");
    assert!(text.contains("check.verlinde     pass"), "{text}");
}

#[test]
fn oversized_degree_reports_zero() {
    let v = json(&["pair", "--n", "2", "--d", "1", "--g", "2", "--a", "2=9"]);
    assert_eq!(v["result"]["value"], "0");
    assert!(v["diagnostics"][0].as_str().unwrap().contains("vanishes"));
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = ["pair", "--n", "3", "--g", "2", "--a", "2=1", "--f", "3=1", "--json"];
    assert_eq!(moduli(&args).stdout, moduli(&args).stdout);
    let w = ["oracle", "witten", "--n", "3", "--g", "2", "--cutoff", "100", "--json"];
    let one = Command::new(env!("CARGO_BIN_EXE_moduli")).args(w).env("MODULI_THREADS", "1").output().unwrap();
    let many = Command::new(env!("CARGO_BIN_EXE_moduli")).args(w).env("MODULI_THREADS", "8").output().unwrap();
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn grid_emits_one_csv_row_per_spec() {
    let out = moduli(&["pair", "--n", "2,3", "--g", "2,3", "--csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5);
    assert!(lines[0].starts_with("request.a,"));
    assert!(lines[1].contains(",1/12,"));
    assert!(lines[3].contains(",53/1632960,"));
}

#[test]
fn json_grid_is_an_array() {
    let v = json(&["verlinde", "--n", "3", "--d", "1,2", "--g", "2", "--k", "3"]);
    let items = v.as_array().unwrap();
    assert_eq!(items.len(), 2);
    assert!(items.iter().all(|r| r["result"]["D"] == "85"));
}

#[test]
fn timing_only_when_requested() {
    let v = json(&["pair", "--n", "2", "--g", "2", "--timing"]);
    assert!(v["timing_ms"].as_str().unwrap().parse::<u64>().is_ok());
}

#[test]
fn routes_and_classes() {
    let b = json(&["pair", "--n", "2", "--g", "3", "--a", "2=1", "--b", "2:1", "--b", "2:4"]);
    assert_eq!(b["result"]["value"], "1/2");
    assert_eq!(b["result"]["route"], "eq936");
    let f = json(&["pair", "--n", "3", "--g", "2", "--f", "3=2", "--route", "t96b"]);
    assert_eq!(f["result"]["value"], "7/972");
    let e = json(&["pair", "--n", "2", "--g", "3", "--a", "2=2", "--epsilon", "2"]);
    assert_eq!(e["result"]["value"], "1");
    let check = json(&["pair", "--n", "3", "--g", "2", "--a", "2=1", "--f", "3=1", "--route", "binverse-check"]);
    assert_eq!(check["checks"][0]["status"], "pass");
}

#[test]
fn oracles() {
    let t = json(&["oracle", "thaddeus", "--g", "4", "--j", "2"]);
    assert_eq!(t["result"]["value"], "1/48");
    assert_eq!(t["checks"][0]["status"], "pass");
    let s = json(&["oracle", "svol", "--g", "4"]);
    assert_eq!(s["result"]["value"], "31/120960");
    let sz = json(&["oracle", "szenes", "--function", "n2-half-y2", "--cutoff", "5000"]);
    assert_eq!(sz["result"]["rhs"], "1/24");
    assert_eq!(sz["checks"][0]["status"], "pass");
    let w = json(&["oracle", "witten", "--n", "2", "--g", "3", "--cutoff", "2000"]);
    assert_eq!(w["result"]["exact"], "7/1440");
    assert_eq!(w["checks"][0]["status"], "pass");
}

#[test]
fn exit_codes() {
    assert_eq!(moduli(&["pair", "--n", "2", "--d", "2", "--g", "2"]).status.code(), Some(2));
    assert_eq!(moduli(&["pair", "--n", "2", "--g", "2", "--a", "2"]).status.code(), Some(2));
    assert_eq!(moduli(&["pair", "--n", "2", "--g", "2", "--route", "nope"]).status.code(), Some(2));
    assert_eq!(moduli(&["verlinde", "--n", "3", "--g", "2", "--k", "4"]).status.code(), Some(2));
    assert_eq!(moduli(&["bogus"]).status.code(), Some(2));
    // A truncation this coarse cannot meet a 1e-5 relative tolerance.
    assert_eq!(moduli(&["oracle", "witten", "--n", "3", "--g", "2", "--cutoff", "3"]).status.code(), Some(4));
    assert_eq!(moduli(&["selftest"]).status.code(), Some(0));
    let bad_threads =
        Command::new(env!("CARGO_BIN_EXE_moduli")).arg("selftest").env("MODULI_THREADS", "0").output().unwrap();
    assert_eq!(bad_threads.status.code(), Some(2));
}
