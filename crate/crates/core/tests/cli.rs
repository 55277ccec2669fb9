use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_codegraph")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn invariants_worked_example() {
    let out = run(&["invariants", "(0 1^2)(0^3 1)(0^2 1^2)(0^3 1^4)(0 1)(0^3 1^4)", "--family=threshold"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["beta"]["value"], 18);
    assert_eq!(v["beta"]["source"], "formula");
    assert_eq!(v["n"], 27);
}

#[test]
fn invariants_path_on_four() {
    let out = run(&["invariants", "0101", "--family=chain"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["beta"]["value"], 1);
}

#[test]
fn invariants_with_required_oracle() {
    let out = run(&["invariants", "01", "--family=threshold", "--oracle=require"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["beta"]["value"], 1);
    assert_eq!(v["beta"]["source"], "both");
    assert_eq!(v["discrepancies"], Value::Array(vec![]));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["invariants", "0^2"]).status.code(), Some(2));
    assert_eq!(run(&["invariants", "0^2 1 x"]).status.code(), Some(2));
    let over = run(&["invariants", "0^9 1^9", "--oracle=require", "--invariant=lambda"]);
    assert_eq!(over.status.code(), Some(3));
    let tried = run(&["invariants", "0^9 1^9", "--oracle=try", "--invariant=lambda"]);
    assert_eq!(tried.status.code(), Some(0));
    let tight = run(&["invariants", "0^3 1", "--oracle=require", "--budget-beta=3"]);
    assert_eq!(tight.status.code(), Some(3));
}

#[test]
fn sweep_single_code() {
    let out = run(&["sweep", "--max-n=2", "--family=threshold", "--invariant=beta"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    let report: Value = serde_json::from_str(lines[0]).unwrap();
    assert_eq!(report["code"], "(0 1)");
    let summary: Value = serde_json::from_str(lines[1]).unwrap();
    assert_eq!(summary["summary"]["codes_tested"], 1);
    assert_eq!(summary["summary"]["agreements"], 1);
}

#[test]
fn sweep_is_byte_stable() {
    let args = ["sweep", "--max-n=7", "--family=chain", "--invariant=lambda"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn sweep_csv() {
    let out = run(&["sweep", "--max-n=4", "--format=csv", "--invariant=beta"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 1 + 7);
    assert!(text.starts_with("code,family,n,m,beta,beta_source"));
}

#[test]
fn oracle_on_edge_list_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c4.txt");
    std::fs::write(&path, "4 4\n0 1\n1 2\n2 3\n3 0\n").unwrap();
    let out = run(&["oracle", path.to_str().unwrap()]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["beta"], 2);
    assert_eq!(v["lambda"], 4);
    assert_eq!(v["tau_r"], 2);

    std::fs::write(&path, "4 2\n0 1\n").unwrap();
    assert_eq!(run(&["oracle", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn export_formats() {
    let out = run(&["export", "0101", "--family=chain"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "4 3\n0 1\n0 3\n2 3\n");
    let out = run(&["export", "0 1^2", "--format=dot"]);
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("graph G {"));
}
