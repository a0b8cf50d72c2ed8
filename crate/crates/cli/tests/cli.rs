use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn arr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arr")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = arr(&all);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn betti_of_full_monomial() {
    let o = arr(&["betti", "--spec", "full-monomial:4:3", "--prime", "3"]);
    assert!(o.status.success());
    let v = json(&["betti", "--spec", "full-monomial:4:3", "--prime", "3"]);
    assert_eq!(v["beta"], 1);
    assert_eq!(v["beta_via_aomoto"], 1);
    assert!(stdout(&o).contains("witness:"));
}

#[test]
fn all_primes_are_listed() {
    let v = json(&["betti", "--spec", "hessian", "--all-primes"]);
    let primes: Vec<u64> = v.as_array().unwrap().iter().map(|r| r["prime"].as_u64().unwrap()).collect();
    assert_eq!(primes, vec![2, 3, 5, 7, 11]);
    assert_eq!(v[0]["beta"], 2);
}

#[test]
fn build_then_load_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("a333.json");
    let f = file.to_str().unwrap();
    assert!(arr(&["build", "--spec", "monomial:3:3", "-o", f]).status.success());
    let v = json(&["flats", "--file", f]);
    assert_eq!(v["flats"].as_array().unwrap().len(), 12);
    let v = json(&["betti", "--file", f, "--prime", "3"]);
    assert_eq!(v["beta"], 2);
    // loaded from a file, the arrangement gets bounds only
    let v = json(&["monodromy", "--file", f]);
    assert_eq!(v["e"]["3"]["status"], "range");
    assert_eq!(v["e"]["3"]["hi"], 2);
}

fn write_net(dir: &Path, text: &str) -> String {
    let p = dir.join("net.json");
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn multinet_verify_and_search() {
    let dir = tempfile::tempdir().unwrap();
    let net = write_net(
        dir.path(),
        r#"{"blocks": [["H12^0","H12^1","H12^2"], ["H13^0","H13^1","H13^2"], ["H23^0","H23^1","H23^2"]]}"#,
    );
    let v = json(&["multinet", "verify", "--spec", "monomial:3:3", "--net", &net]);
    assert_eq!(v["valid"], true);
    assert_eq!(v["net"], true);
    let v = json(&["multinet", "search", "--spec", "hessian", "--k", "4"]);
    assert!(v["count"].as_u64().unwrap() >= 1);
    let o = arr(&["multinet", "search", "--spec", "G31", "--k", "3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn monodromy_profile_json() {
    let v = json(&["monodromy", "--spec", "hessian"]);
    assert_eq!(v["n"], 12);
    assert_eq!(v["e"]["1"], 11);
    assert_eq!(v["e"]["2"]["value"], 2);
    assert_eq!(v["e"]["4"]["status"], "range");
    assert_eq!(v["e"]["4"]["lo"], 1);
    assert_eq!(v["char_poly"]["complete"], false);
    let v = json(&["monodromy", "--spec", "full-monomial:4:3"]);
    assert_eq!(v["char_poly"]["factors"], serde_json::json!([["t-1", 14], ["Phi_3", 1]]));
}

#[test]
fn reproduce_is_deterministic_and_passes() {
    let a = arr(&["reproduce", "prop-full", "--m-max", "4"]);
    let b = arr(&["reproduce", "prop-full", "--m-max", "4"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("all match"));
    let v = json(&["reproduce", "thm-b", "--m-max", "3"]);
    assert_eq!(v["all_match"], true);
}

#[test]
fn user_errors_exit_one() {
    assert_eq!(arr(&["betti", "--spec", "nonsense", "--prime", "2"]).status.code(), Some(1));
    assert_eq!(arr(&["betti", "--spec", "hessian", "--prime", "4"]).status.code(), Some(1));
    assert_eq!(arr(&["betti", "--spec", "hessian"]).status.code(), Some(1));
    assert_eq!(arr(&["flats", "--file", "/nonexistent.json"]).status.code(), Some(1));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(arr(&["flats", "--file", bad.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(arr(&["--help"]).status.code(), Some(0));
}

#[test]
fn human_tables() {
    let o = arr(&["flats", "--spec", "monomial:2:3", "--census"]);
    let text = stdout(&o);
    assert!(text.contains("census matches"), "{text}");
    let o = arr(&["criteria", "--spec", "full-monomial:2:3", "--prime", "5"]);
    let text = stdout(&o);
    assert!(text.contains("yuzvinsky") && text.contains("beta_5 = 0"), "{text}");
}
