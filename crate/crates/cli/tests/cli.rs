use std::path::PathBuf;
use std::process::{Command, Output};

use goldbach_cli::commands::report_header;

fn zeros_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/zeros_1000.txt")
}

fn goldbach(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_goldbach"))
        .args(args)
        .env("GOLDBACH_ZEROS", zeros_path())
        .output()
        .unwrap()
}

fn parse(v: &str) -> f64 {
    v.parse().unwrap()
}

#[test]
fn compare_row_is_consistent() {
    let out = goldbach(&[
        "compare", "--N", "100", "--k", "1", "--T", "1000", "--M", "6",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(header, report_header());
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row.len(), header.len());
    let col = |name: &str| parse(row[header.iter().position(|h| *h == name).unwrap()]);
    assert_eq!(
        col("abs_error"),
        (col("gk_direct") - col("explicit_total")).abs()
    );
    assert_eq!(col("wall_time_ms"), 0.0);
    let terms: f64 = (1..=13).map(|i| col(&format!("term{i:02}"))).sum();
    assert_eq!(terms, col("explicit_total"));
}

#[test]
fn exit_codes() {
    assert_eq!(
        goldbach(&["compare", "--N", "3", "--k", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        goldbach(&["compare", "--N", "50", "--k", "-1"])
            .status
            .code(),
        Some(2)
    );
    let out = goldbach(&["compare", "--N", "50", "--k", "1", "--T", "5000"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("1419.42"));
    assert_eq!(
        goldbach(&["sweep", "--Nmin", "64", "--Nmax", "128", "--k", ""])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        goldbach(&["sweep", "--Nmin", "64", "--Nmax", "128"])
            .status
            .code(),
        Some(2)
    );
    let missing = goldbach(&[
        "compare",
        "--N",
        "50",
        "--k",
        "1",
        "--zeros",
        "/nonexistent/zeros.txt",
    ]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn sweep_json() {
    let out = goldbach(&[
        "sweep", "--Nmin", "32", "--Nmax", "64", "--step", "x2", "--k", "0.5,1.5", "--T", "300",
        "--M", "3", "--format", "json",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 4);
    let keys: Vec<&String> = rows[0].as_object().unwrap().keys().collect();
    let mut want = report_header();
    want.push("discrepancy_15".into());
    want.push("residual_c".into());
    assert_eq!(keys, want.iter().collect::<Vec<_>>());
    assert!(rows[0]["discrepancy_15"].is_null());
    assert!(rows[1]["discrepancy_15"].is_f64());
}

#[test]
fn verify_kernel_and_laurent_table() {
    let out = goldbach(&["verify-kernel"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 19);
    assert!(!text.contains("false"));

    let out = goldbach(&["laurent-table", "--M", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<Vec<&str>> = text.lines().map(|l| l.split(',').collect()).collect();
    assert_eq!(rows[0][9], "A_nu_N4");
    assert_eq!(rows[1][1], "odd");
    assert_eq!(rows[1][2], "");
    let b1 = parse(rows[2][6]);
    let b2 = parse(rows[2][7]);
    assert!((b1 - b2).abs() <= 1e-9);
}

#[test]
fn selftest_passes() {
    let out = goldbach(&["selftest"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
}
