use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

fn polymem(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polymem"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn result(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    v["result"].clone()
}

#[test]
fn example_one_has_one_member() {
    let out = polymem(&[
        "membership",
        "--a",
        &fixture("example1_a.json"),
        "--c",
        &fixture("example1_c.json"),
        "--f",
        &fixture("example1_f.json"),
    ]);
    assert_eq!(result(&out)["dimV"], 1);
}

#[test]
fn malformed_input_exits_with_one() {
    let dir = std::env::temp_dir().join(format!("polymem-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\"dim\": 2, \"points\": [[0, 0], [1]]").unwrap();
    let out = polymem(&[
        "membership",
        "--a",
        bad.to_str().unwrap(),
        "--b",
        &fixture("triangle.json"),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn foundation_on_a_cube() {
    let out = polymem(&[
        "foundation",
        "--a",
        &fixture("cube3_times3.json"),
        "--b",
        &fixture("cube3.json"),
    ]);
    assert_eq!(result(&out)["t"], "2");
}

#[test]
fn koszul_on_a_triangle() {
    let out = polymem(&["koszul", "--b", &fixture("triangle.json"), "--k", "2"]);
    let r = result(&out);
    assert_eq!(r["oracle"], 3);
    assert_eq!(r["formula"], 3);
}

#[test]
fn verify_suite_succeeds() {
    let out = polymem(&["verify", "--suite", "paper-table-s4"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("PASS criterion  2"));
}

#[test]
fn unknown_suite_is_an_input_error() {
    let out = polymem(&["verify", "--suite", "nope"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn output_file_is_written() {
    let path = std::env::temp_dir().join(format!("polymem-out-{}.json", std::process::id()));
    let out = polymem(&[
        "--out",
        path.to_str().unwrap(),
        "polytope",
        "--b",
        &fixture("square.json"),
        "--op",
        "describe",
    ]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["result"]["latticePoints"], 9);
    let _ = std::fs::remove_file(&path);
}
