use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const N5: &str = r#"{"n":5,"covers":[[0,1],[0,2],[1,3],[2,4],[3,4]]}"#;
const CUBE: &str = r#"{"n":8,"covers":[[0,1],[0,2],[0,4],[1,3],[1,5],[2,3],[2,6],[4,5],[4,6],[3,7],[5,7],[6,7]]}"#;

fn latkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latkit")).args(args).env_remove("LATKIT_MAX_N").output().unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn negative_verdict_is_success() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "n5.json", N5);
    let out = latkit(&["--json", "check", &f, "--property", "modular"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v[0]["property"], "modular");
    assert_eq!(v[0]["verdict"], false);
    assert!(v[0]["witness"].is_array());
}

#[test]
fn invalid_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "broken.json", r#"{"n":3,"covers":[[0,1],[0,2]]}"#);
    assert_eq!(latkit(&["check", &f, "--property", "modular"]).status.code(), Some(2));
    let f = write(dir.path(), "garbage.json", "{not json");
    assert_eq!(latkit(&["check", &f, "--property", "modular"]).status.code(), Some(2));
    assert_eq!(latkit(&["check", "/nonexistent/x.json", "--property", "modular"]).status.code(), Some(2));
    assert_eq!(latkit(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(latkit(&["check", &f, "--property", "bogus"]).status.code(), Some(2));
    assert_eq!(latkit(&["free", "leq", "a+", "b"]).status.code(), Some(2));
    let out = latkit(&["--json", "check", &f, "--property", "modular"]);
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "invalid-input");
}

#[test]
fn size_cap_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "cube.json", CUBE);
    let run = |cap: &str| {
        Command::new(env!("CARGO_BIN_EXE_latkit"))
            .args(["check", &f, "--property", "distributive"])
            .env("LATKIT_MAX_N", cap)
            .output()
            .unwrap()
    };
    assert_eq!(run("7").status.code(), Some(2));
    assert_eq!(run("8").status.code(), Some(0));
    assert_eq!(run("many").status.code(), Some(2));
}

#[test]
fn json_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "cube.json", CUBE);
    for args in [
        vec!["--json", "check", &f, "--property", "all"],
        vec!["--json", "dseq", &f],
        vec!["--json", "classify", &f],
        vec!["--json", "gadget-census", "--max-n", "6"],
        vec!["--json", "scan", "conjecture1", "--max-n", "7", "--entries"],
    ] {
        let a = latkit(&args);
        let mut with_jobs = vec!["--jobs", "1"];
        with_jobs.extend(&args);
        let b = latkit(&with_jobs);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn render_edges_are_the_covers() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "cube.json", CUBE);
    let out = latkit(&["render", &f]);
    let dot = String::from_utf8(out.stdout).unwrap();
    let mut edges: Vec<(usize, usize)> = dot
        .lines()
        .filter_map(|l| l.trim().strip_suffix(" [dir=none];"))
        .map(|e| {
            let (a, b) = e.split_once(" -> ").unwrap();
            (a[1..].parse().unwrap(), b[1..].parse().unwrap())
        })
        .collect();
    edges.sort_unstable();
    let v: Value = serde_json::from_str(CUBE).unwrap();
    let mut covers: Vec<(usize, usize)> = v["covers"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c[0].as_u64().unwrap() as usize, c[1].as_u64().unwrap() as usize))
        .collect();
    covers.sort_unstable();
    assert_eq!(edges, covers);
}

#[test]
fn enumerate_counts_and_emit() {
    let out = latkit(&["enum", "--max-n", "6"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 1 + 1 + 1 + 2 + 5 + 15);
    let out = latkit(&["enum", "--max-n", "7", "--width", "2", "--property", "whitman,sd"]);
    for line in String::from_utf8(out.stdout).unwrap().lines() {
        let v: Value = serde_json::from_str(line).unwrap();
        assert!(v["n"].as_u64().unwrap() <= 7);
    }
    let dir = tempfile::tempdir().unwrap();
    let emit = dir.path().join("out");
    let out = latkit(&["--json", "enum", "--max-n", "5", "--emit", emit.to_str().unwrap()]);
    assert_eq!(json(&out)["summary"]["count"], 10);
    assert_eq!(std::fs::read_dir(&emit).unwrap().count(), 10);
    assert_eq!(latkit(&["enum", "--max-n", "12"]).status.code(), Some(2));
}

#[test]
fn verify_verbs_pass() {
    let out = latkit(&["--json", "verify", "gj", "--max-n", "8"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["width3"]["qualifying"], 1);
    let out = latkit(&["--json", "verify", "corpus", "--max-n", "7"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["passed"], true);
}

#[test]
fn free_word_problem() {
    let out = latkit(&["--json", "free", "leq", "x*y", "x+z"]);
    assert_eq!(json(&out)["leq"], true);
    let out = latkit(&["--json", "free", "leq", "x*(y+z)", "x*y+x*z"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["leq"], false);
    let out = latkit(&["free", "canon", "x+x*y"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "x");
}

#[test]
fn ladder_split_verbs() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "dec.json", r#"{"insert":[{"between":[[1,0],[1,1]]}]}"#);
    let out = latkit(&["--json", "ladder", "split", &spec, "--radius", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["stable"], true);
    assert_eq!(v["prop2_band"][0]["side"], "B");
    assert_eq!(v["window_relative"], true);

    let out = latkit(&["ladder", "window", "--radius", "3", "--decoration", &spec]);
    let file = write(dir.path(), "window.json", std::str::from_utf8(&out.stdout).unwrap());
    let out = latkit(&["--json", "ladder", "split", &file, "--a", "3", "--b", "10"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));

    let dr = write(dir.path(), "dr.json", r#"{"insert":[{"between":[[1,1],[1,3]]}]}"#);
    assert_eq!(latkit(&["ladder", "split", &dr, "--radius", "3"]).status.code(), Some(1));
    assert_eq!(latkit(&["ladder", "split", &dr]).status.code(), Some(2));
}
