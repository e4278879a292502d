use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn teamgame(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_teamgame")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("teamgame-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn solve_named_examples() {
    let card = json_of(&teamgame(&["solve", "--example", "card"]));
    assert_eq!(card["root_value"], "-1/3");
    let ex3 = json_of(&teamgame(&["solve", "--example", "ex3", "--utility", "UE"]));
    assert_eq!(ex3["root_value"], "-1/2");
}

#[test]
fn solve_reads_a_spec_file_with_fractions_and_decimals() {
    let path = scratch("spec.json");
    std::fs::write(&path, r#"{"T": 2, "P": [["1/2", 0.25], [1, "0"]], "U": "UE"}"#).unwrap();
    let doc = json_of(&teamgame(&["solve", path.to_str().unwrap(), "--full"]));
    assert!(doc["value_table"].as_array().is_some_and(|t| !t.is_empty()));
    assert_eq!(doc["spec"]["P"][0][1], "1/4");
}

#[test]
fn abandonment_delta_uses_one_based_players() {
    let doc = json_of(&teamgame(&["abandon-delta", "--example", "ex3", "--team", "1", "--players", "4"]));
    assert_eq!(doc["delta"], "2/3");
}

#[test]
fn exit_codes_distinguish_failure_kinds() {
    let bad = scratch("bad.json");
    std::fs::write(&bad, r#"{"T": 2, "P": [[1, 2], [0, 0]], "U": "UE"}"#).unwrap();
    assert_eq!(teamgame(&["solve", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(teamgame(&["solve", "--example", "nope"]).status.code(), Some(2));
    // a majority-utility instance fails the expected-wins claim
    assert_eq!(teamgame(&["verify", "theorem3", "--example", "ex3"]).status.code(), Some(1));
    assert_eq!(teamgame(&["solve", "--example", "ex4:3", "--budget", "5"]).status.code(), Some(3));
    assert_eq!(teamgame(&["verify", "theorem3", "--example", "ex3", "--utility", "UE"]).status.code(), Some(0));
}

#[test]
fn out_flag_writes_the_same_document() {
    let path = scratch("card.json");
    let out = teamgame(&["solve", "--example", "card", "--out", path.to_str().unwrap()]);
    let printed = json_of(&out);
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(printed, written);
}

#[test]
fn sweep_writes_csv_rows() {
    let path = scratch("sweep.csv");
    let doc = json_of(&teamgame(&[
        "sweep", "--instances", "6", "--T", "3", "--utility", "UE", "--out", path.to_str().unwrap(),
    ]));
    assert_eq!(doc["summary"]["completed"], 6);
    let csv = std::fs::read_to_string(&path).unwrap();
    assert!(csv.starts_with("index,T,m,n,utility,recruits_used,base_value,best_value,gain"));
    assert_eq!(csv.lines().count(), 7);
}

#[test]
fn gamma_and_simulate_report_exact_values() {
    let g = json_of(&teamgame(&["gamma", "--C", "3", "--a", "2", "--b", "0"]));
    assert_eq!(g["value"], "1");
    let sim = json_of(&teamgame(&["simulate", "--example", "card", "--samples", "2000", "--seed", "4"]));
    assert_eq!(sim["exact_value"], "-1/3");
    assert!(sim["approx_z_score"].as_f64().unwrap() < 5.0);
}
