//! Black-box checks of the binary: exit codes, output determinism, and the
//! documented report surface.

use std::process::{Command, Output};

fn walkbound(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_walkbound"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn analyze_emits_resolved_report() {
    let out = walkbound(&["analyze", "N,SW,S,SE"]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["upper_bound"]["value"], serde_json::json!(3.46410161514));
    assert_eq!(json["resolved"]["value"], serde_json::json!(3.46410161514));
    assert_eq!(json["model"]["compass"], serde_json::json!("SW,S,N,SE"));
    assert_eq!(
        json["upper_bound"]["radical_heuristic"],
        serde_json::json!("2*sqrt(3) (heuristic)")
    );
}

#[test]
fn analyze_worked_example_two_report() {
    let out = walkbound(&["analyze", "N,W,SE,S,SW"]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let theta = json["upper_bound"]["theta_star"].as_f64().unwrap();
    assert!((theta - 0.716648055560).abs() < 1e-9);
    let value = json["upper_bound"]["value"].as_f64().unwrap();
    assert!((value - 4.2148).abs() < 5e-4);
    assert_eq!(json["resolved"]["value"], json["upper_bound"]["value"]);
}

#[test]
fn exit_codes_match_contract() {
    // parse failure -> 2
    let out = walkbound(&["analyze", "NOPE"]);
    assert_eq!(out.status.code(), Some(2));
    // inessential model -> 3 with the documented message
    let out = walkbound(&["analyze", "N,E"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not quarter-plane essential"));
    // success -> 0
    let out = walkbound(&["analyze", "N,E,S,W", "--nmax", "8"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn reports_are_byte_stable() {
    let a = walkbound(&["analyze", "N,W,SE,S,SW", "--nmax", "12"]);
    let b = walkbound(&["analyze", "N,W,SE,S,SW", "--nmax", "12"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let a = walkbound(&["survey"]);
    let b = walkbound(&["survey"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn survey_has_79_rows_in_both_formats() {
    let out = walkbound(&["survey"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 80); // header + 79 rows
    assert!(text.starts_with("model,cardinality,drift_x,drift_y,covariance"));
    let applicable = text.lines().skip(1).filter(|l| l.ends_with("true")).count();
    assert_eq!(applicable, 74);

    let out = walkbound(&["survey", "--format", "json"]);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json.as_array().unwrap().len(), 79);
}

#[test]
fn analyze_three_d_model() {
    let out = walkbound(&[
        "analyze",
        "(1,1,1);(0,1,1);(0,1,-1);(-1,0,0);(-1,1,0);(-1,-1,0)",
        "--nmax",
        "10",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let value = json["upper_bound"]["value"].as_f64().unwrap();
    assert!((value - (2.0 + 2.0 * 3f64.sqrt())).abs() < 1e-6);
}

#[test]
fn verify_runs_selected_suites() {
    let out = walkbound(&["verify", "--suite", "worked-examples", "--suite", "scaling"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS worked-examples"));
    assert!(text.contains("PASS scaling"));
    // unknown suite is a usage error
    let out = walkbound(&["verify", "--suite", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}
