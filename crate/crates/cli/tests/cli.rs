use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn reeb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reeb"))
        .args(args)
        .env_remove("REEB_SEARCH_BUDGET")
        .output()
        .expect("runs")
}

fn reeb_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_reeb"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawns");
    child
        .stdin
        .take()
        .expect("piped")
        .write_all(input.as_bytes())
        .expect("writes");
    child.wait_with_output().expect("runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn path(p: &Path) -> &str {
    p.to_str().expect("utf-8 path")
}

#[test]
fn betti_of_example2() {
    let out = reeb(&["betti", path(&data("ex2.json"))]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        json(&out),
        serde_json::json!({"euler": 1, "reticulation": 1})
    );
}

#[test]
fn example3_has_three_factors() {
    let out = reeb(&["decompose", path(&data("ex3.json"))]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out).as_array().unwrap().len(), 3);
    let text = reeb(&["decompose", "--format", "text", path(&data("ex3.json"))]);
    assert_eq!(String::from_utf8(text.stdout).unwrap().lines().count(), 3);
}

#[test]
fn iso_exit_codes() {
    let ex2 = data("ex2.json");
    let ex3 = data("ex3.json");
    assert_eq!(
        reeb(&["iso", path(&ex2), path(&ex2)]).status.code(),
        Some(0)
    );
    assert_eq!(
        reeb(&["iso", path(&ex2), path(&ex3)]).status.code(),
        Some(1)
    );
    let oracle = reeb(&["iso", "--oracle", path(&ex2), path(&ex2)]);
    assert_eq!(oracle.status.code(), Some(0));
    assert!(json(&oracle)["witness"]["vertex_maps"].is_array());
    // unlabelled inputs cannot be compared as labelled graphs
    assert_eq!(
        reeb(&["iso", "--labelled", path(&ex2), path(&ex2)])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn search_budget_is_honoured() {
    let ex2 = data("ex2.json");
    let out = Command::new(env!("CARGO_BIN_EXE_reeb"))
        .args(["iso", "--oracle", path(&ex2), path(&ex2)])
        .env("REEB_SEARCH_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(reeb(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(reeb(&["iso", "only-one.json"]).status.code(), Some(64));
    assert_eq!(reeb(&["--help"]).status.code(), Some(0));
}

#[test]
fn invalid_graph_is_a_negative_validation() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"levels":["1","0"],"vertices":[["a"],["b"]],"edges":[[{"id":"e","down":"a","up":"b"}]]}"#)
        .unwrap();
    let out = reeb(&["validate", path(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["valid"], Value::Bool(false));
    assert_eq!(
        reeb(&["validate", path(&data("ex2.json"))]).status.code(),
        Some(0)
    );
    assert_eq!(reeb(&["betti", path(&bad)]).status.code(), Some(2));
}

#[test]
fn parse_errors_exit_2_with_position() {
    let out = reeb_stdin(&["convert", "--to", "json", "-"], "((A:1,B:1);");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("1:1"));
}

#[test]
fn convert_round_trip_is_isomorphic() {
    let dir = tempfile::tempdir().unwrap();
    let src = "((A:2,(B:1)#H1:1):1,(#H1:1)C:1)R;";
    let json_out = reeb_stdin(&["convert", "--to", "json", "--from", "enwk", "-"], src);
    assert_eq!(json_out.status.code(), Some(0));
    let enwk = reeb_stdin(
        &["convert", "--to", "enwk", "-"],
        &String::from_utf8(json_out.stdout.clone()).unwrap(),
    );
    assert_eq!(enwk.status.code(), Some(0));
    let (a, b) = (dir.path().join("a.enwk"), dir.path().join("b.enwk"));
    std::fs::write(&a, src).unwrap();
    std::fs::write(&b, &enwk.stdout).unwrap();
    assert_eq!(reeb(&["iso", path(&a), path(&b)]).status.code(), Some(0));
    assert_eq!(reeb(&["dist", path(&a), path(&b)]).status.code(), Some(0));
}

#[test]
fn generate_is_deterministic_and_valid() {
    let a = reeb(&["generate", "--seed", "7", "--leaves", "5", "--betti", "2"]);
    let b = reeb(&["generate", "--seed", "7", "--leaves", "5", "--betti", "2"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let out = reeb_stdin(&["betti", "-"], &String::from_utf8(a.stdout).unwrap());
    assert_eq!(json(&out)["euler"], 2);
    assert_eq!(reeb(&["generate", "--leaves", "0"]).status.code(), Some(2));
}

#[test]
fn distances_between_networks() {
    let dir = tempfile::tempdir().unwrap();
    // two timings of one topology; the reticulation moves from time 2 to time 3
    std::fs::write(
        dir.path().join("a.enwk"),
        "((A:3,(B:2)#H1:1):1,(#H1:1,C:3):1)R;",
    )
    .unwrap();
    std::fs::write(
        dir.path().join("b.enwk"),
        "((A:3,(B:1)#H1:2):1,(#H1:2,C:3):1)R;",
    )
    .unwrap();
    let out = reeb(&["dist", "--matrix", path(dir.path())]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = json(&out);
    assert_eq!(v["distances"][0][0], "0");
    assert_ne!(v["distances"][0][1], "0");
    assert_eq!(v["distances"][0][1], v["distances"][1][0]);
    let csv = reeb(&["dist", "--format", "csv", "--matrix", path(dir.path())]);
    assert_eq!(String::from_utf8(csv.stdout).unwrap().lines().count(), 3);
    let bad_p = reeb(&[
        "dist",
        "--p",
        "0",
        path(&dir.path().join("a.enwk")),
        path(&dir.path().join("b.enwk")),
    ]);
    assert_eq!(bad_p.status.code(), Some(2));
}

#[test]
fn dot_output() {
    let out = reeb(&["minimize", "--format", "dot", path(&data("ex2.json"))]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("digraph reeb {"));
    let conv = reeb(&["convert", "--to", "dot", path(&data("ex2.json"))]);
    assert!(String::from_utf8(conv.stdout)
        .unwrap()
        .contains("rank=same"));
}
