use std::process::{Command, Output};

use fdldg_core::harness::{read_report_csv, REPORT_HEADER, SOLUTION_HEADER, VERIFY_HEADER};

fn fdldg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fdldg")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn run_writes_samples_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("u.csv");
    let o = fdldg(&[
        "run",
        "--alpha",
        "1.5",
        "--degree",
        "2",
        "--cells",
        "20",
        "--dt",
        "0.01",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(SOLUTION_HEADER));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 200);
    assert!(rows.iter().all(|r| (r[1] - r[2]).abs() < 1e-3));
}

#[test]
fn stability_run_has_no_exact_column() {
    let o = fdldg(&["run", "--problem", "stability", "--cells", "8", "--dt", "0.1", "--tfinal", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().skip(1).all(|l| l.ends_with(',')));
    assert_eq!(text.lines().count(), 81);
}

#[test]
fn text_summary() {
    let o = fdldg(&["run", "--cells", "10", "--dt", "0.05", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("steps     20"));
    assert!(text.contains("l2_error"));
}

#[test]
fn space_study_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("space.csv");
    let o = fdldg(&[
        "converge-space",
        "--alpha",
        "1.2,1.8",
        "--degree",
        "0,1",
        "--cells",
        "5,10,20",
        "--dt",
        "0.01",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().next(), Some(REPORT_HEADER));
    let report = read_report_csv(&out).unwrap();
    assert_eq!(report.len(), 12);
    assert!(report.rows[0].l2_order.is_none());
    assert!(report.rows[2].l2_order.is_some());
}

#[test]
fn time_study_reports_effective_step() {
    let o = fdldg(&["converge-time", "--alpha", "1.5", "--degree", "1", "--cells", "20", "--dt", "0.1,0.03"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let row = text.lines().nth(2).unwrap();
    let dt: f64 = row.split(',').nth(3).unwrap().parse().unwrap();
    assert_eq!(dt, 1.0 / 33.0);
}

#[test]
fn config_file_with_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"alpha": 1.4, "degree": [0], "cells": [4, 8], "dt": 0.05, "format": "text"}"#).unwrap();
    let o = fdldg(&["converge-space", "--config", cfg.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some(REPORT_HEADER));
    assert_eq!(text.lines().count(), 3);
    assert!(text.lines().nth(1).unwrap().starts_with("1.4,0,4,0.05,"));
}

#[test]
fn verify_passing_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("diff.csv");
    let o = fdldg(&["verify-paper", "--table", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().next(), Some(VERIFY_HEADER));
    assert_eq!(text.lines().count(), 1 + 30 + 24);
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn verify_exit_code_reflects_failures() {
    // The temporal study has cells this scheme does not reproduce within tolerance.
    let o = fdldg(&["verify-paper", "--table", "5", "--format", "text"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("table 5: FAIL"));
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        vec!["frobnicate"],
        vec!["run", "--alpha", "2.5"],
        vec!["run", "--cells", "10,20"],
        vec!["run", "--problem", "nope"],
        vec!["run", "--format", "xml"],
        vec!["converge-space", "--problem", "stability"],
        vec!["verify-paper", "--table", "9"],
        vec!["run", "--config", "/nonexistent/cfg.json"],
        vec!["run", "--out", "/nonexistent-dir/u.csv"],
    ] {
        let o = fdldg(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn help_exits_cleanly() {
    let o = fdldg(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for verb in ["run", "converge-space", "converge-time", "verify-paper"] {
        assert!(text.contains(verb));
    }
}
