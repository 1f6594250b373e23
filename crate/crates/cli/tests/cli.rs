use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn conetop(args: &[&str], input: Option<&str>) -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_conetop"));
    cmd.env_remove("CONETOP_GUARD");
    if let Some((command, rest)) = args.split_first() {
        cmd.arg(command);
        if let Some(name) = input {
            cmd.arg(data(name));
        }
        cmd.args(rest);
    }
    cmd
}

fn run(args: &[&str], input: Option<&str>) -> Output {
    conetop(args, input).output().unwrap()
}

fn run_json(args: &[&str], input: &str) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--report", "json", "--omit-timing"]);
    let out = run(&all, Some(input));
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), v)
}

#[test]
fn identical_traders_satisfy_all_four_conditions() {
    let (code, v) = run_json(&["economy", "--theorem11"], "identical.json");
    assert_eq!(code, 0);
    for k in ["a", "b", "c", "d", "consistent"] {
        assert_eq!(v["verdict"][k], true, "{k}");
    }
}

#[test]
fn orthogonal_rays_name_the_empty_intersection() {
    let (code, v) = run_json(&["economy"], "rays.json");
    assert_eq!(code, 1);
    assert_eq!(v["verdict"]["limited_arbitrage"], false);
    assert_eq!(v["verdict"]["witness_price"], Value::Null);
    assert_eq!(v["verdict"]["empty_intersection_witness"], serde_json::json!(["ann", "bob"]));
}

#[test]
fn cones_around_the_plane_fail_every_condition() {
    let (code, v) = run_json(&["economy", "--theorem11"], "three_cones.json");
    assert_eq!(code, 1);
    for k in ["a", "b", "c", "d"] {
        assert_eq!(v["verdict"][k], false, "{k}");
    }
    assert_eq!(v["verdict"]["consistent"], true);
}

#[test]
fn homology_of_a_circle() {
    let (code, v) = run_json(&["homology"], "circle.json");
    assert_eq!(code, 0);
    assert_eq!(v["command"], "homology");
    assert_eq!(v["details"]["f_vector"], serde_json::json!([3, 3]));
    assert_eq!(v["details"]["acyclic"], false);
    assert_eq!(v["details"]["reduced_euler_characteristic"], -1);
}

#[test]
fn verdict_exit_codes() {
    assert_eq!(run_json(&["family"], "arcs.json").0, 1);
    assert_eq!(run_json(&["cones"], "half_planes.json").0, 1);
    assert_eq!(run_json(&["cover"], "half_edges.json").0, 0);
    assert_eq!(run_json(&["cover", "--check", "kkm"], "half_edges.json").0, 0);
    let (code, v) = run_json(&["helly"], "intervals.json");
    assert_eq!(code, 0);
    assert_eq!(v["details"]["witness_point"], serde_json::json!(["3/2"]));
}

#[test]
fn selftest_is_deterministic() {
    let args = ["selftest", "--seed", "42", "--omit-timing", "--report", "json"];
    let a = run(&args, None);
    let b = run(&args, None);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["verdict"]["passed"], true);
}

#[test]
fn tampered_selftest_reports_an_inconsistency() {
    let out = run(&["selftest", "--seed", "42", "--tamper", "--omit-timing"], None);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn input_errors_exit_two() {
    let out = run(&["homology", "--report", "json"], Some("malformed.json"));
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["error"].as_str().unwrap().contains("parsing"));

    let missing = Command::new(env!("CARGO_BIN_EXE_conetop")).args(["homology", "/no/such/file.json"]).output().unwrap();
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn guard_limits() {
    assert_eq!(run(&["homology", "--max-index-set", "25"], Some("circle.json")).status.code(), Some(2));
    assert_eq!(run(&["family", "--max-index-set", "1"], Some("arcs.json")).status.code(), Some(2));

    let with_env = |guard: &str, args: &[&str]| {
        conetop(args, Some("arcs.json")).env("CONETOP_GUARD", guard).output().unwrap().status.code()
    };
    assert_eq!(with_env("1", &["family"]), Some(2));
    assert_eq!(with_env("30", &["family"]), Some(2));
    // The flag wins over the environment.
    assert_eq!(with_env("1", &["family", "--max-index-set", "2"]), Some(1));
    assert_eq!(with_env("30", &["family", "--max-index-set", "16"]), Some(1));
}

#[test]
fn text_report_renders_the_json() {
    let text = run(&["homology", "--omit-timing"], Some("circle.json"));
    let text = String::from_utf8(text.stdout).unwrap();
    let (_, v) = run_json(&["homology"], "circle.json");
    assert!(text.starts_with("command: homology\n"));
    assert!(text.contains(&format!("tool_version: {}", v["tool_version"].as_str().unwrap())));
    assert!(text.contains("f_vector: [3,3]"));
    assert!(text.contains("acyclic: false"));
    assert!(text.contains("reduced_euler_characteristic: -1"));
}
