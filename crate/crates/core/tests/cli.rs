use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_positivity"))
        .args(args)
        .output()
        .unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn check_text_and_json_agree() {
    let text = run(&["check", "--tf", "(2s+1)/(s+1)"]);
    assert!(text.status.success());
    let text = String::from_utf8(text.stdout).unwrap();
    assert!(text.contains("negative"), "{text}");
    let v = json(&["check", "--num", "2,1", "--den", "1,1", "--json"]);
    assert_eq!(v["ep"]["status"], "negative");
}

#[test]
fn decompose_and_invert() {
    let v = json(&["decompose", "--tf", "(2s+1)/(s+1)", "--json"]);
    assert_eq!(v["d"], 2.0);
    let v = json(&["invert", "--tf", "(2s+1)/(s+1)", "--json"]);
    assert_eq!(v["proper"], true);
}

#[test]
fn discretize_reports_markov_parameters() {
    let v = json(&[
        "discretize",
        "--tf",
        "1/(s+1)",
        "--dt",
        "0.1",
        "--steps",
        "10",
        "--json",
    ]);
    let text = v.to_string();
    assert!(text.contains("0.0951625819"), "{text}");
}

#[test]
fn simulate_energy_column_stays_nonnegative() {
    let out = run(&[
        "simulate",
        "--tf",
        "(2s+1)/(s+1)",
        "--input",
        "pulse:0,1,1",
        "--until",
        "3",
        "--dt",
        "0.01",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,u,y,J"));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 301);
    assert!(rows.iter().all(|r| r[3] >= -1e-12));
    assert!(rows[100][2] < 0.0);
}

#[test]
fn simulate_reads_csv_inputs() {
    let dir = std::env::temp_dir().join(format!("positivity-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("u.csv");
    std::fs::write(&path, "t,value\n0,1\n0.5,1\n1.0,0\n1.5,0\n").unwrap();
    let spec = format!("file:{}", path.display());
    let out = run(&[
        "simulate", "--tf", "1/(s+1)", "--input", &spec, "--until", "1.5",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 5);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn quadrant_is_seeded() {
    let a = run(&["quadrant", "--count", "30", "--seed", "3", "--json"]);
    let b = run(&["quadrant", "--count", "30", "--seed", "3", "--json"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["check", "--tf", "1/(s+a)"][..],
        &["check", "--num", "1"],
        &["discretize", "--tf", "1/(s+1)", "--dt", "0"],
        &[
            "simulate", "--tf", "1/(s+1)", "--input", "ramp:-1", "--until", "1",
        ],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn failed_demo_claim_exits_four() {
    let out = run(&["demo", "--tol", "1"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8(out.stdout).unwrap().contains("FAIL"));
}
