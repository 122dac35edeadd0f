use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_leja-lab"))
        .args(args)
        .env_remove("LEJA_LAB_THREADS")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn coords(row: &Value) -> Vec<(f64, f64)> {
    row["coords"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["re"].as_f64().unwrap(), c["im"].as_f64().unwrap()))
        .collect()
}

#[test]
fn points_listing() {
    let v = json(&["points", "--dim", "2", "--count", "3", "--compact", "disk,disk"]);
    let rows = v["points"].as_array().unwrap();
    let got: Vec<_> = rows.iter().map(coords).collect();
    assert_eq!(
        got,
        vec![
            vec![(1.0, 0.0), (1.0, 0.0)],
            vec![(1.0, 0.0), (-1.0, 0.0)],
            vec![(-1.0, 0.0), (1.0, 0.0)]
        ]
    );
    assert_eq!(rows[2]["coords"][0]["angle_num"], 1);
    assert_eq!(rows[2]["coords"][0]["angle_level"], 0);

    let v = json(&["points", "--dim", "1", "--count", "4"]);
    let got: Vec<_> = v["points"].as_array().unwrap().iter().map(|r| coords(r)[0]).collect();
    assert_eq!(got, vec![(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0)]);

    let out = run(&["points", "--dim", "2", "--count", "3", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "n,k1,k2,re1,im1,angle_num1,angle_level1,re2,im2,angle_num2,angle_level2"
    );
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["points", "--dim", "2", "--count", "0"][..],
        &["points", "--dim", "1", "--count", "3", "--compact", "ellipse:1"],
        &["interp", "--function", "sin", "--max-degree", "3"],
        &["lebesgue", "--dim", "2"],
        &["lebesgue", "--dim", "3", "--count", "4"],
        &["verify", "--suite", "nope"],
        &["verify", "--suite", "disk-leja", "--count", "4", "--inject-bad-node", "9"],
        &["frobnicate"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    let out = Command::new(env!("CARGO_BIN_EXE_leja-lab"))
        .args(["points", "--count", "2"])
        .env("LEJA_LAB_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_suites() {
    let v = json(&["verify", "--suite", "counterexample"]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["suites"][0]["report"]["not_intertwining"], true);
    assert_eq!(v["suites"][0]["report"]["is_leja_section"], true);

    let v = json(&["verify", "--suite", "disk-leja", "--count", "32"]);
    assert_eq!(v["passed"], true);

    let out = run(&["verify", "--suite", "disk-leja", "--count", "8", "--inject-bad-node", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["suites"][0]["report"]["first_failure"], 2);

    let out = run(&["verify", "--suite", "multidim", "--count", "10", "--grid", "512", "--inject-bad-node", "1"]);
    assert_eq!(out.status.code(), Some(1));

    let v = json(&["verify", "--suite", "flip-oracle", "--count", "10"]);
    assert_eq!(v["passed"], true);
}

#[test]
fn lebesgue_reports() {
    let v = json(&["lebesgue", "--dim", "2", "--count", "1", "--grid", "64"]);
    assert_eq!(v[0]["lambda"], 1.0);
    let v = json(&["lebesgue", "--dim", "1", "--count", "64"]);
    assert!(v[0]["lambda"].as_f64().unwrap() <= 64.0);

    let out = run(&["lebesgue", "--dim", "2", "--sweep-degree", "3", "--grid", "64", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "N,d,m,grid,lambda,lambda/N^1.5,argmax_z_angle,argmax_w_angle");
    assert_eq!(lines.len(), 4);
    assert!(lines[3].starts_with("10,3,3,64,"));

    let v = json(&["lebesgue", "--dim", "2", "--count", "6", "--grid", "64", "--compact", "ellipse:2"]);
    assert!(v[0]["lambda"].as_f64().unwrap() >= 1.0);
}

#[test]
fn interp_reproduces_polynomials() {
    let v = json(&["interp", "--function", "poly:z2w", "--max-degree", "5", "--grid", "64"]);
    assert_eq!(v["function"], "poly:z2w");
    for row in &v["rows"].as_array().unwrap()[2..] {
        assert!(row["sup_error"].as_f64().unwrap() < 1e-9);
    }
    let out = run(&["interp", "--function", "pole:3", "--max-degree", "4", "--grid", "64", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("d,N,sup_error,slope\n"));
}

fn run_to(dir: &Path, name: &str, args: &[&str]) -> Vec<u8> {
    let path = dir.join(name);
    let mut all: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap().to_string();
    all.extend(["--out", &p]);
    let out = run(&all);
    assert!(out.status.code().is_some());
    std::fs::read(&path).unwrap()
}

#[test]
fn identical_configs_give_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    for (i, args) in [
        &["lebesgue", "--dim", "2", "--count", "10", "--grid", "96"][..],
        &["lebesgue", "--dim", "2", "--count", "10", "--grid", "96", "--format", "csv"],
        &["verify", "--suite", "flip-oracle", "--count", "6", "--seed", "7"],
        &["points", "--dim", "3", "--count", "20"],
        &["interp", "--function", "exp", "--max-degree", "3", "--grid", "64"],
    ]
    .iter()
    .enumerate()
    {
        let a = run_to(dir.path(), &format!("a{i}"), args);
        let b = run_to(dir.path(), &format!("b{i}"), args);
        assert_eq!(a, b, "{args:?}");
    }
}

#[test]
fn points_files_round_trip_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    for (dim, count, suite, grid) in [("2", "10", "multidim", "1024"), ("1", "16", "disk-leja", "4096")] {
        let file = dir.path().join(format!("points{dim}.json"));
        let f = file.to_str().unwrap();
        assert!(run(&["points", "--dim", dim, "--count", count, "--out", f]).status.success());
        let direct = run(&["verify", "--suite", suite, "--dim", dim, "--count", count, "--grid", grid]);
        let reread = run(&["verify", "--suite", suite, "--nodes-file", f, "--grid", grid]);
        assert_eq!(direct.status.code(), Some(0));
        assert_eq!(reread.status.code(), direct.status.code());
        let bad = run(&["verify", "--suite", suite, "--nodes-file", f, "--grid", grid, "--inject-bad-node", "2"]);
        let bad_direct = run(&["verify", "--suite", suite, "--dim", dim, "--count", count, "--grid", grid, "--inject-bad-node", "2"]);
        assert_eq!(bad.status.code(), Some(1));
        assert_eq!(bad_direct.status.code(), Some(1));
    }
    let missing = run(&["verify", "--suite", "multidim", "--nodes-file", "/nonexistent/points.json"]);
    assert_eq!(missing.status.code(), Some(2));
}
