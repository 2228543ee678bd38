//! End-to-end checks of the command line interface: output formats are
//! pinned byte-for-byte and exit codes distinguish usage errors from
//! failed verifications.

use std::process::{Command, Output};

fn modhom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modhom"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

#[test]
fn dims_json_format_is_pinned() {
    let out = modhom(&["dims", "--s", "1", "--t", "1", "--r", "2", "--deg", "-1,1", "--n-max", "3"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out).trim(),
        r#"{"pair":{"s":1,"t":1,"r":[2]},"deg":[-1,1],"variant":"MHH","dims":{"0":1,"1":2,"2":1,"3":0}}"#
    );
}

#[test]
fn dims_respects_the_pole_free_class() {
    let out = modhom(&["dims", "--s", "1", "--t", "0", "--r", "2", "--deg", "-1", "--n-max", "1", "--no-poles"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out).trim(),
        r#"{"pair":{"s":1,"t":0,"r":[2]},"deg":[-1],"variant":"PHH","dims":{"0":0,"1":0}}"#
    );
}

#[test]
fn dims_csv_format_is_pinned() {
    let out = modhom(&[
        "dims", "--s", "2", "--t", "1", "--r", "2,1", "--deg", "-1,0,1", "--n-max", "1",
        "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "s,t,r,deg,variant,n,dim");
    assert_eq!(lines[1], "2,1,2;1,-1;0;1,MHH,0,1");
    assert_eq!(lines.len(), 3);
}

#[test]
fn deg_window_emits_an_array() {
    let out = modhom(&["cohomology", "--s", "1", "--t", "0", "--r", "1", "--deg-window", "0..1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with('['), "window output is a JSON array: {text}");
    let reports: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(reports.as_array().unwrap().len(), 2);
}

#[test]
fn cyclic_routes_agree_end_to_end() {
    for variant in ["hc", "hcminus", "hp"] {
        let mut args = vec![
            "cyclic", "--s", "1", "--t", "1", "--r", "3", "--deg", "-2,1", "--variant", variant,
        ];
        let formula = modhom(&args);
        args.push("--bicomplex");
        let oracle = modhom(&args);
        assert!(formula.status.success());
        assert_eq!(stdout(&formula), stdout(&oracle), "variant {variant}");
    }
}

#[test]
fn probe_exit_codes_separate_outcomes() {
    // Confirmed by escalation.
    let out = modhom(&["probe", "--s", "1", "--t", "0", "--r", "2", "--chain", "x1 (x) x1^-2"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out).trim(),
        r#"{"outcome":"confirmed","pole_bound":1,"degree":1,"deg":[-1]}"#
    );
    // Inconclusive when the witness span excludes the needed poles.
    let out = modhom(&[
        "probe", "--s", "1", "--t", "0", "--r", "2", "--chain", "x1 (x) x1^-2",
        "--pole-bound", "0",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(
        stdout(&out).trim(),
        r#"{"outcome":"inconclusive","pole_bound":0,"degree":1,"deg":[-1]}"#
    );
    // Precondition failures are reported, not confirmed.
    let out = modhom(&["probe", "--s", "1", "--t", "1", "--r", "2", "--chain", "y1 (x) y1 (x) y1^2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a cycle"));
}

#[test]
fn verify_suite_selection_and_exit_codes() {
    let out = modhom(&["verify", "--suite", "identities", "--samples", "25"]);
    assert!(out.status.success());
    let reports: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(reports[0]["suite"], "identities");
    assert_eq!(reports[0]["status"], "pass");
    assert_eq!(reports[0]["cases"], 25);

    let out = modhom(&["verify", "--suite", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_with_two() {
    let out = modhom(&["dims", "--t", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = modhom(&["dims", "--s", "1", "--t", "0"]);
    assert_eq!(out.status.code(), Some(2), "missing modulus exponents");
    let out = modhom(&["cyclic", "--s", "0", "--t", "1", "--variant", "hp", "--n-min", "3", "--n-max", "1"]);
    assert_eq!(out.status.code(), Some(2), "empty degree range");
}

#[test]
fn monoid_reports_quotient_data() {
    let out = modhom(&[
        "monoid", "--source", "N", "--target", "N", "--matrix", "2", "--slots", "2",
        "--tuple", "1;1",
    ]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(report["invariant_factors"], serde_json::json!(["2"]));
    assert_eq!(report["free_rank"], 0);
    assert_eq!(report["membership"], true);
    assert_eq!(report["total"], serde_json::json!(["2"]));
}

#[test]
fn thread_env_is_validated() {
    let out = Command::new(env!("CARGO_BIN_EXE_modhom"))
        .args(["dims", "--s", "0", "--t", "1", "--deg", "0"])
        .env("MODHOM_THREADS", "zero")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
}
