//! Exit codes and outputs of the command-line tool.

use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quartrep")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn tmp(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("quartrep-cli-{}-{name}", std::process::id()))
}

#[test]
fn analyze_then_verify() {
    let path = tmp("report.json");
    let o = run(&["analyze", "x^4 - y^4 + x", "--json", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("leaf: negative_leading"));
    let o = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "PASS");

    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::write(&path, text.replacen("\"value\": \"", "\"value\": \"1", 1)).unwrap();
    let o = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
    std::fs::remove_file(path).ok();
}

#[test]
fn witness_reaches_the_target() {
    let o = run(&["witness", "(x^2 - 2*y^2)^2 + x", "--below", "-1000000"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("F(-1607521, 1136689) = -1607520"), "{out}");
    assert!(out.contains("convergents used: 17"));
    let o = run(&["witness", "x^2 + y^2"]);
    assert!(stdout(&o).starts_with("no witness"));
}

#[test]
fn oracle_and_density() {
    let path = tmp("density.json");
    let o = run(&["density", "x^2 + y^2", "--N", "10000,100000", "--json", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "N,count,exhaustive\n10000,2749,true\n100000,24028,true\nclass: LandauLogHalf\n");
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(v.is_object());
    std::fs::remove_file(path).ok();

    let o = run(&["oracle", "x^4 + y^4 + x", "--box", "40", "--range", "1000"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("smallest missing value >= 0: 4 (rigorous: true)"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["analyze", "x^^2"]).status.code(), Some(2));
    assert_eq!(run(&["density", "x^2 + y^2", "--N"]).status.code(), Some(2));
    assert_eq!(run(&["density", "x^2 + y^2", "--N", "100,10"]).status.code(), Some(2));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "/nonexistent/report.json"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "5"]).status.code(), Some(3));
    assert_eq!(run(&["analyze", "x^5 + y"]).status.code(), Some(3));
    assert_eq!(run(&["oracle", "x^2 + y^2", "--box", "100000", "--range", "10"]).status.code(), Some(4));
}

#[test]
fn output_is_deterministic() {
    let a = run(&["analyze", "(x^2 - 2*y^2)^2 + x^2"]);
    let b = run(&["analyze", "(x^2 - 2*y^2)^2 + x^2"]);
    assert_eq!(a.stdout, b.stdout);
}
