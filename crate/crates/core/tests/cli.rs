use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn cubedom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubedom")).args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn stats_prints_counts() {
    let out = cubedom(&["stats", "--n", "6", "--k", "4", "--l", "2"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["vertex_count"], 30);
    assert_eq!(v["edge_count"], 90);
    assert_eq!(v["upper_degree"], 6);
    assert_eq!(v["lower_degree"], 6);
}

#[test]
fn construct_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t1.json");
    let out = cubedom(&["construct", "--theorem", "1", "--n", "9", "--k", "6", "-o", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let out = cubedom(&["verify", "--cert", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["verified"], true);

    let out = cubedom(&["verify", "--cert", path.to_str().unwrap(), "--structural"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["verdict"], "verified");

    // remove one member: no longer dominating
    let mut cert: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    cert["members"].as_array_mut().unwrap().remove(0);
    cert.as_object_mut().unwrap().insert("provenance".into(), "external".into());
    cert.as_object_mut().unwrap().remove("claimed_size_bound");
    fs::write(&path, cert.to_string()).unwrap();
    let out = cubedom(&["verify", "--cert", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["verified"], false);
    assert!(v["witness"].is_object());
}

#[test]
fn theorem2_construct_to_stdout() {
    let out = cubedom(&["construct", "--theorem", "2", "--n", "7"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["k"], 6);
    assert_eq!(v["members"].as_array().unwrap().len(), 3);
}

#[test]
fn invalid_input_exits_2() {
    for args in [
        &["stats", "--n", "5", "--k", "2", "--l", "3"][..],
        &["stats", "--n", "65", "--k", "3", "--l", "2"],
        &["construct", "--theorem", "1", "--n", "8"],
        &["construct", "--theorem", "1", "--n", "8", "--k", "4"],
        &["construct", "--theorem", "3", "--n", "8"],
        &["verify", "--cert", "/nonexistent/cert.json"],
    ] {
        assert_eq!(cubedom(args).status.code(), Some(2), "{args:?}");
    }
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, "{\"n\": 5}").unwrap();
    assert_eq!(cubedom(&["verify", "--cert", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn budget_and_size_limits_exit_3() {
    let out = cubedom(&["exact", "--n", "8", "--k", "3", "--l", "2", "--node-budget", "100"]);
    assert_eq!(out.status.code(), Some(3));
    let v = stdout_json(&out);
    assert_eq!(v["proven_optimal"], false);
    assert!(v["lower_bound"].as_u64().unwrap() <= v["value"].as_u64().unwrap());

    let out = cubedom(&["greedy", "--n", "30", "--k", "15", "--l", "2"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(cubedom(&["gk1-check", "--n-max", "9"]).status.code(), Some(3));
}

#[test]
fn exact_and_greedy_reports() {
    let out = cubedom(&["exact", "--n", "6", "--k", "4", "--l", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["value"], 6);
    assert_eq!(v["proven_optimal"], true);
    assert_eq!(v["method"], "branch_and_bound");

    let out = cubedom(&["greedy", "--n", "6", "--k", "4", "--l", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_json(&out)["value"].as_u64().unwrap() >= 6);
}

#[test]
fn sweep_csv_and_json_agree() {
    let csv_out = cubedom(&["sweep", "--theorem", "1", "--n-min", "4", "--n-max", "8"]);
    let json_out = cubedom(&["sweep", "--theorem", "1", "--n-min", "4", "--n-max", "8", "--format", "json"]);
    assert!(csv_out.status.success() && json_out.status.success());
    let rows: Vec<Value> = serde_json::from_slice(&json_out.stdout).unwrap();
    let mut reader = csv::Reader::from_reader(&csv_out.stdout[..]);
    let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    let records: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(records.len(), rows.len());
    for (rec, row) in records.iter().zip(&rows) {
        for (name, cell) in header.iter().zip(rec.iter()) {
            let json = match &row[name.as_str()] {
                Value::Null => String::new(),
                other => other.to_string(),
            };
            assert_eq!(cell, json, "column {name}");
        }
    }
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for cmd in [
        &["sweep", "--theorem", "2", "--n-min", "4", "--n-max", "9"][..],
        &["sweep", "--theorem", "1", "--n-min", "10", "--n-max", "40", "--structural-only", "--format", "json"],
        &["conjecture", "--n-min", "4", "--n-max", "8", "--k-min", "3", "--k-max", "3"],
    ] {
        let mut files = Vec::new();
        for run in 0..2 {
            let path = dir.path().join(format!("{}-{run}", cmd.join("_")));
            let mut args = cmd.to_vec();
            args.extend(["-o", path.to_str().unwrap()]);
            assert!(cubedom(&args).status.success(), "{cmd:?}");
            files.push(fs::read(&path).unwrap());
        }
        assert!(!files[0].is_empty());
        assert_eq!(files[0], files[1], "{cmd:?}");
    }
}

#[test]
fn conjecture_csv_has_main_terms() {
    let out = cubedom(&["conjecture", "--n-min", "4", "--n-max", "8", "--k-min", "3", "--k-max", "3"]);
    assert!(out.status.success());
    let mut reader = csv::Reader::from_reader(&out.stdout[..]);
    let col = reader.headers().unwrap().iter().position(|h| h == "conjecture_main_term").unwrap();
    let terms: Vec<String> = reader.records().map(|r| r.unwrap()[col].to_string()).collect();
    assert_eq!(terms, ["6.0", "9.375", "13.5", "18.375", "24.0"]);
}
