use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superkl"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn canonical_super_example_has_four_terms() {
    let v = json(&[
        "compute",
        "canonical",
        "--flavor",
        "super",
        "--m",
        "4",
        "0,-1,-3,-4|-2,-1,0,*",
    ]);
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 4);
    let mut exps: Vec<i64> = terms.iter().map(|t| t["poly"][0][0].as_i64().unwrap()).collect();
    exps.sort_unstable();
    assert_eq!(exps, [0, 1, 1, 2]);
    assert_eq!(v["basis"], "U");
}

#[test]
fn text_format_of_reductive_example() {
    let out = run(&["compute", "canonical", "2,1,0|3,0,-2", "--format", "text"]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap().trim(),
        "(q) [2,0,-2|3,1,0] + (1) [2,1,0|3,0,-2]"
    );
}

#[test]
fn atypicality_and_natural() {
    assert_eq!(
        json(&["compute", "atypicality", "--flavor", "reductive", "2,1,0|3,0,-2"]),
        1
    );
    let v = json(&["compute", "natural", "0,-1,-3,-4|3,2,1,*"]);
    assert_eq!(v["flavor"], "super");
    assert_eq!(v["pos"], serde_json::json!([-2, -1, 0]));
    let back = json(&["compute", "natural", "--flavor", "super", "0,-1,-3,-4|-2,-1,0,*"]);
    assert_eq!(back["pos"], serde_json::json!([3, 2, 1]));
}

#[test]
fn kl_dual_example() {
    let v = json(&["compute", "kl", "--flavor", "super", "-2,-4|-4,-2,*", "0,-2|-2,0,*"]);
    assert_eq!(v["l"], serde_json::json!([[-4, 1], [-2, 1]]));
    assert_eq!(v["u"], serde_json::json!([]));
}

#[test]
fn character_of_gl11() {
    let out = run(&[
        "compute",
        "character",
        "--flavor",
        "super",
        "--n",
        "1",
        "1|1",
        "--format",
        "text",
    ]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "1*x^[0, 2] + 1*x^[1, 1]");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["compute", "canonical", "1,2|x"]).status.code(), Some(2));
    assert_eq!(
        run(&["compute", "canonical", "--m", "2", "2,1,0|3"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["compute", "frobnicate", "1|2"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "golden"]).status.code(), Some(0));
}

#[test]
fn jobs_do_not_change_output() {
    let a = run(&["verify", "oracle", "--max-rank", "3", "--range", "2", "--jobs", "1"]);
    let b = run(&["verify", "oracle", "--max-rank", "3", "--range", "2", "--jobs", "4"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["verify", "truncation", "--seed", "7", "--jobs", "1"]);
    let d = run(&["verify", "truncation", "--seed", "7", "--jobs", "3"]);
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn duality_sweep_small() {
    let v = json(&["verify", "duality", "--m", "1", "--range", "3"]);
    assert_eq!(v["passed"], true);
    assert!(v["suites"][0]["cases"].as_u64().unwrap() > 0);
}
