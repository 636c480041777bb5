use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const FIGURE: &str = r#"{"rays":[[0,2],[1,2],[1,0]],"cones":[[0,1],[1,2]],"ordered":true}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chamberforge")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = run(&all);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn figure_classification() {
    let dir = tempfile::tempdir().unwrap();
    let fan = write(dir.path(), "fig.json", FIGURE);
    let v = json(&["stability", "classify", "--preset", "PGL3", "--fan", &fan, "--type", "[[1,2],[1,0]]"]);
    assert_eq!(v["stable"], true);
    let v = json(&["moduli", "classify", "--preset", "PGL3", "--fan", &fan, "--type", "[[1,2],[0,2]]"]);
    assert_eq!(v["reason"], "wrong_order");
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let fan = write(dir.path(), "fig.json", FIGURE);
    let cases: Vec<Vec<&str>> = vec![
        vec!["cox", "classify", "--preset", "PGL3", "--fan", &fan],
        vec!["fan", "weyl", "--preset", "PGL3", "--fan", &fan],
        vec!["moduli", "orbits", "--kgl", "2", "--format", "dot"],
        vec!["vinberg", "git", "--preset", "B2-adjoint", "--rho", "2,1/3"],
    ];
    for args in cases {
        let a = run(&args);
        let b = run(&args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn weyl_fan_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let fan = write(dir.path(), "fig.json", FIGURE);
    let w = json(&["fan", "weyl", "--preset", "PGL3", "--fan", &fan]);
    let wpath = write(dir.path(), "weyl.json", &w.to_string());
    let rep = json(&["fan", "validate", "--fan", &wpath]);
    assert_eq!(rep["valid"], true);
    let again = json(&["fan", "weyl", "--preset", "PGL3", "--fan", &wpath]);
    assert_eq!(again["rays"].as_array().unwrap().len(), w["rays"].as_array().unwrap().len());
    assert_eq!(again["cones"].as_array().unwrap().len(), w["cones"].as_array().unwrap().len());
}

#[test]
fn root_datum_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let shown = json(&["rootdata", "show", "--preset", "B2-sc"]);
    let path = write(dir.path(), "b2.json", &shown["root_datum"].to_string());
    let back = json(&["rootdata", "show", "--root-datum", &path]);
    assert_eq!(back, shown);
    assert_eq!(back["weyl_order"], 8);
    let whole = write(dir.path(), "envelope.json", &shown.to_string());
    assert_eq!(json(&["rootdata", "show", "--root-datum", &whole]), shown);
}

#[test]
fn kgl_orbits_and_dot() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&["moduli", "orbits", "--kgl", "2", "--format", "json"]);
    assert_eq!(v["nodes"].as_array().unwrap().len(), 8);
    let dot = dir.path().join("out.dot");
    let out = run(&["moduli", "orbits", "--preset", "GL2", "--kgl", "--dot", dot.to_str().unwrap()]);
    assert!(out.status.success());
    let body = std::fs::read_to_string(dot).unwrap();
    assert!(body.starts_with("digraph"));
    assert!(body.contains("\"c_1_3\" [label=\"2:"));
}

#[test]
fn losev_manin_enumeration() {
    let v = json(&["moduli", "losev-manin", "--r", "2", "--enumerate"]);
    let chains = v["chains"].as_array().unwrap();
    assert_eq!(chains.len(), 13);
    assert!(chains.iter().all(|c| c["stable"] == true));
}

#[test]
fn exit_codes() {
    let out = run(&["rootdata", "show", "--preset", "E8"]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "unknown_preset");

    let out = run(&["moduli", "losev-manin", "--r", "2", "--partition", "0,1,2|"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["cohomology", "--preset", "PGL3", "--type", "[[1,"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["--weyl-cap", "3", "rootdata", "show", "--preset", "A2-adjoint"]);
    assert_eq!(out.status.code(), Some(1));
}
