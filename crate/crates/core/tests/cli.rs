use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chow-kunneth")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn projectors_verify_p3() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let out = dir.path().join("p3.json");
    let o = run(&[
        "projectors",
        "--space",
        r#"{"kind":"projective_space","n":3}"#,
        "--verify",
        "--out",
        p(&out),
        "--report",
        p(&report),
        "--jobs",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("22/22 checks passed"));
    let doc: Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(doc["all_pass"], Value::Bool(true));
    // the written file verifies on its own, deterministically
    let r1 = dir.path().join("r1.json");
    let r2 = dir.path().join("r2.json");
    assert_eq!(run(&["verify", p(&out), "--out", p(&r1)]).status.code(), Some(0));
    assert_eq!(run(&["verify", p(&out), "--out", p(&r2), "--jobs", "4"]).status.code(), Some(0));
    assert_eq!(fs::read(&r1).unwrap(), fs::read(&r2).unwrap());
}

fn scaled_pi0(dir: &Path) -> std::path::PathBuf {
    let out = dir.join("p2.json");
    let o = run(&["projectors", "--space", r#"{"kind":"projective_space","n":2}"#, "--out", p(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let mut doc: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    let pi0 = doc["projectors"].as_array_mut().unwrap().iter_mut().find(|x| x["index"] == 0).unwrap();
    pi0["terms"][0][2] = Value::String("2".into());
    let edited = dir.join("scaled.json");
    fs::write(&edited, serde_json::to_string_pretty(&doc).unwrap()).unwrap();
    edited
}

#[test]
fn scaled_projector_fails_with_residual() {
    let dir = tempfile::tempdir().unwrap();
    let edited = scaled_pi0(dir.path());
    let report = dir.path().join("report.json");
    let o = run(&["verify", p(&edited), "--out", p(&report)]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("FAIL idempotence [0]"), "{text}");
    assert!(text.contains("residual: 2*h^2 x 1"), "{text}");
    let doc: Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(doc["all_pass"], Value::Bool(false));
    let failed: Vec<&Value> = doc["checks"].as_array().unwrap().iter().filter(|c| c["pass"] == false).collect();
    assert!(failed.iter().any(|c| c["check"] == "idempotence" && c["residual_class"].is_array()));
}

#[test]
fn malformed_inputs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{ not json").unwrap();
    let o = run(&["verify", p(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad.json"));
    assert_eq!(run(&["projectors", "--space", r#"{"kind":"grassmannian","k":4,"n":2}"#]).status.code(), Some(2));
    assert_eq!(run(&["projectors"]).status.code(), Some(2));
    assert_eq!(run(&["formulas", "fano", "--n", "x", "--degrees", "3", "--r", "1"]).status.code(), Some(2));
}

#[test]
fn formulas() {
    let o = run(&["formulas", "fano", "--n", "4", "--degrees", "5", "--r", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("delta = 0"));
    let o = run(&["formulas", "fano", "--n", "4", "--degrees", "3", "--r", "1"]);
    assert!(stdout(&o).contains("warning: delta = 1 differs from the expected dimension 2"));
    assert!(stdout(&run(&["formulas", "rep", "--g", "2", "--n", "2"])).contains("dim = 13"));
    assert!(stdout(&run(&["formulas", "barth", "--n", "6", "--d", "4"])).contains("range = 2"));
}

#[test]
fn correspondence_commands() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().join("diag.json");
    let space = r#"{"kind":"grassmannian","k":2,"n":4}"#;
    assert_eq!(run(&["diagonal", "--space", space, "--out", p(&d)]).status.code(), Some(0));
    let dd = dir.path().join("dd.json");
    assert_eq!(run(&["compose", p(&d), p(&d), "--out", p(&dd)]).status.code(), Some(0));
    assert_eq!(fs::read(&d).unwrap(), fs::read(&dd).unwrap());
    let o = run(&["act", p(&d), "--class", r#"{"s[2]":"1/2","s[1,1]":3}"#]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1/2*s[2] + 3*s[1,1]");
    let ring = dir.path().join("ring.json");
    let o = run(&["build", "--space", space, "--out", p(&ring)]);
    assert!(stdout(&o).contains("betti numbers: 1 0 1 0 2 0 1 0 1"));
}

#[test]
fn equivariant_commands() {
    let dir = tempfile::tempdir().unwrap();
    let set = dir.path().join("p2.json");
    run(&["projectors", "--space", r#"{"kind":"projective_space","n":2}"#, "--out", p(&set)]);
    let model = r#"{"base":{"kind":"projective_space","n":2},"group":{"kind":"multiplicative_torus","rank":1},"N":8,"weights":[0,1,2]}"#;
    let lifted = dir.path().join("lift.json");
    let o = run(&["lift", p(&set), "--model", model, "--out", p(&lifted)]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let doc: Value = serde_json::from_str(&fs::read_to_string(&lifted).unwrap()).unwrap();
    assert_eq!(doc["model"]["N"], 8);
    assert_eq!(doc["members"].as_array().unwrap().len(), 3);
    let o = run(&["stabilize", p(&set), "--model", model, "--degree", "4", "--n1", "6", "--n2", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["restrict", p(&set), "--model", model]);
    assert_eq!(o.status.code(), Some(0));

    let cubic = dir.path().join("cubic.json");
    let space = r#"{"kind":"ci_model","ambient":{"kind":"projective_space","n":3},"fundamental_class_expr":{"h":3},"middle_rank":6}"#;
    run(&["projectors", "--space", space, "--out", p(&cubic)]);
    let o = run(&["restrict", p(&cubic), "--kill-primitive"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    // the GL model with weights is not modeled
    let gl = r#"{"base":{"kind":"projective_space","n":2},"group":{"kind":"general_linear","n":2},"N":4,"weights":[0,1,2]}"#;
    assert_eq!(run(&["lift", p(&set), "--model", gl]).status.code(), Some(2));
}
