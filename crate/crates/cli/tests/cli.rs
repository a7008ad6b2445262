use std::process::{Command, Output};

use clap::Parser;
use locc_cli::report::ProtocolReport;
use locc_cli::{run, Cli, Report, Results, RunConfig, EXIT_CHECK_FAILED, EXIT_INVALID};

fn locc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_locc")).args(args).output().unwrap()
}

fn config(args: &[&str]) -> RunConfig {
    let mut full = vec!["locc"];
    full.extend_from_slice(args);
    RunConfig::try_from(Cli::try_parse_from(full).unwrap()).unwrap()
}

fn protocol(report: &Report) -> &ProtocolReport {
    match &report.results {
        Results::Protocol(p) => p,
        other => panic!("expected a protocol report, got {other:?}"),
    }
}

#[test]
fn remote_rotation_example() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = locc(&["run-protocol", "remote-rotation", "--phi", "120deg", "--state", "H", "--seed", "7", "--out", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: Report = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report.version, "1.0.0");
    let p = protocol(&report);
    assert_eq!(p.result.branches.len(), 4);
    assert!(p.fidelities.iter().all(|f| (f - 1.0).abs() < 1e-10));
    assert_eq!(p.ledger.components().map(|x| (x * 1e9).round() / 1e9), [1.0, 1.0, 1.0]);
    assert!(report.timing.is_none());
}

#[test]
fn dephasing_tomography_example() {
    let report = run(&config(&["tomography", "--channel", "dephasing", "--p", "0.85", "--eta", "0.92", "--phi", "60deg"])).unwrap();
    let Results::Tomography(t) = &report.results else { panic!("not a tomography report") };
    let chi11 = t.chi.entries()[(0, 0)].re;
    assert!((chi11 - (1.0 + 0.782 * 0.5) / 2.0).abs() < 1e-12);
    assert!((chi11 - 0.6955).abs() < 1e-12);
    assert!((t.average_fidelity.closed_form - (2.0 + 0.782) / 3.0).abs() < 1e-10);
    assert!(report.passed());
}

#[test]
fn bounds_report_covers_all_kinds() {
    let out = locc(&["bounds-report", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<_> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 4);
    for kind in ["arbitrary-u", "restricted-rotation", "multi-copy", "teleport"] {
        let row = rows.iter().find(|r| r.starts_with(kind)).unwrap();
        assert!(row.ends_with("true,true"), "{row}");
    }
}

#[test]
fn failed_checks_exit_with_one() {
    let out = locc(&["run-protocol", "remote-rotation", "--unitary", "H", "--state", "D"]);
    assert_eq!(out.status.code(), Some(EXIT_CHECK_FAILED));
    assert!(String::from_utf8_lossy(&out.stderr).contains("branch-determinism"));
    let out = locc(&["run-protocol", "multicopy", "--theta", "40deg", "--state", "random", "--step5", "literal-fourier"]);
    assert_eq!(out.status.code(), Some(EXIT_CHECK_FAILED));
}

#[test]
fn invalid_parameters_exit_with_two() {
    for args in [
        &["run-protocol", "remote-rotation", "--phi", "120"][..],
        &["run-protocol", "teleport", "--dim", "4"],
        &["run-protocol", "teleport", "--state", "(1,0),(0,0),(0,0)"],
        &["tomography", "--channel", "dephasing", "--eta", "-0.1"],
        &["tomography", "--channel", "unitary"],
        &["experiment", "--state", "Q"],
        &["frobnicate"],
    ] {
        let out = locc(args);
        assert_eq!(out.status.code(), Some(EXIT_INVALID), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    let out = locc(&["run-protocol", "bidirectional", "--dim", "4"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("dimension 4"));
}

#[test]
fn reports_are_reproducible_and_round_trip() {
    let c = config(&["run-protocol", "bidirectional", "--unitary", "random", "--state", "random", "--sample", "--seed", "3"]);
    let a = run(&c).unwrap();
    let b = run(&c).unwrap();
    let text = a.render(locc_cli::Format::Json).unwrap();
    assert_eq!(text, b.render(locc_cli::Format::Json).unwrap());
    let back: Report = serde_json::from_str(&text).unwrap();
    assert_eq!(back.render(locc_cli::Format::Json).unwrap(), text);
    assert!(protocol(&a).sampled_branch.is_some_and(|i| i < 16));

    let other = run(&config(&["run-protocol", "bidirectional", "--unitary", "random", "--state", "random", "--seed", "4"])).unwrap();
    assert_ne!(protocol(&other).input_state, protocol(&a).input_state);
}

#[test]
fn unknown_report_fields_are_rejected() {
    let text = run(&config(&["run-protocol", "signaling"])).unwrap().render(locc_cli::Format::Json).unwrap();
    let tampered = text.replacen("\"version\"", "\"extra\": 1,\n  \"version\"", 1);
    assert!(serde_json::from_str::<Report>(&tampered).is_err());
}

#[test]
fn timing_is_opt_in() {
    let report = run(&config(&["run-protocol", "teleport", "--timing"])).unwrap();
    assert!(report.timing.is_some());
}

#[test]
fn plot_data_is_long_form_csv() {
    let out = locc(&["tomography", "--channel", "experiment", "--phi", "120deg", "--plot-data", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("row,col,re,im\n"));
    assert_eq!(text.lines().count(), 17);
}

#[test]
fn qutrit_teleport_from_literal() {
    let report = run(&config(&["run-protocol", "teleport", "--dim", "3", "--state", "(1,0),(0,1),(0,-1)"])).unwrap();
    let p = protocol(&report);
    assert_eq!(p.result.branches.len(), 9);
    assert!(p.bounds.is_none());
    assert!(report.passed());
}
