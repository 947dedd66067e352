//! End-to-end tests of the `pa` binary: exit codes, pinned outputs, JSON
//! round trips, and byte stability.

use std::process::Command;

use pa_core::algebra::AlgebraElement;
use pa_core::report::VerificationReport;
use pa_core::schurweyl::SparseMatrix;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_pa"))
        .args(args)
        .output()
        .expect("failed to spawn pa");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("stdout not utf-8"),
        String::from_utf8(out.stderr).expect("stderr not utf-8"),
    )
}

#[test]
fn presentation_check_exits_zero() {
    let (code, _, _) = run(&["verify", "presentation", "--k", "3", "--xi", "7"]);
    assert_eq!(code, 0);
}

#[test]
fn pinned_orbit_product() {
    let (code, stdout, _) = run(&[
        "mul", "--basis", "orbit", "--level", "3", "--xi", "5", "--a", "1,2,3|4,5,6", "--b",
        "1,2,3|4,5,6", "--json",
    ]);
    assert_eq!(code, 0);
    let el: AlgebraElement = serde_json::from_str(&stdout).expect("element JSON");
    assert_eq!(el.num_terms(), 2);
    let coeffs: Vec<String> = el.terms().map(|(_, c)| format!("{c}")).collect();
    assert!(coeffs.contains(&"3".to_string()), "coeffs: {coeffs:?}");
    assert!(coeffs.contains(&"4".to_string()), "coeffs: {coeffs:?}");
}

#[test]
fn pinned_essential_idempotent() {
    let (code, stdout, _) = run(&["idempotent", "e", "--k", "2", "--n", "3", "--json"]);
    assert_eq!(code, 0);
    let el: AlgebraElement = serde_json::from_str(&stdout).expect("element JSON");
    assert_eq!(el.num_terms(), 1);
    let (pi, coeff) = el.terms().next().unwrap();
    assert_eq!(pi.to_string(), "1|2|3|4");
    assert_eq!(format!("{coeff}"), "1");
}

#[test]
fn element_json_round_trips() {
    let (code, stdout, _) = run(&[
        "mul", "--basis", "diagram", "--level", "2", "--xi", "3", "--a", "1,3|2,4", "--b",
        "1,2,3,4", "--json",
    ]);
    assert_eq!(code, 0);
    let el: AlgebraElement = serde_json::from_str(&stdout).expect("element JSON");
    let reprinted = serde_json::to_string(&el).expect("serialize");
    assert_eq!(reprinted, stdout.trim_end());
}

#[test]
fn matrix_json_round_trips() {
    let (code, stdout, _) = run(&[
        "phi", "--level", "2", "--n", "3", "--basis", "diagram", "--pi", "1,3|2,4", "--json",
    ]);
    assert_eq!(code, 0);
    let m: SparseMatrix = serde_json::from_str(&stdout).expect("matrix JSON");
    let reprinted = serde_json::to_string(&m).expect("serialize");
    assert_eq!(reprinted, stdout.trim_end());
}

#[test]
fn report_json_round_trips() {
    let (code, stdout, _) = run(&["verify", "steps", "--k", "2", "--n", "4", "--json"]);
    assert_eq!(code, 0);
    let rep: VerificationReport = serde_json::from_str(&stdout).expect("report JSON");
    assert!(rep.pass());
    let reprinted = serde_json::to_string(&rep).expect("serialize");
    assert_eq!(reprinted, stdout.trim_end());
}

#[test]
fn json_output_is_byte_stable() {
    let args = ["xi", "--k", "2", "--n", "4", "--json"];
    let (c1, out1, _) = run(&args);
    let (c2, out2, _) = run(&args);
    assert_eq!(c1, 0);
    assert_eq!(c2, 0);
    assert_eq!(out1, out2);
}

#[test]
fn meta_adds_envelope() {
    let (code, stdout, _) = run(&["idempotent", "e", "--k", "2", "--n", "3", "--json", "--meta"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).expect("meta JSON");
    assert!(v.get("meta").and_then(|m| m.get("unix_time")).is_some());
    assert!(v.get("value").is_some());
}

#[test]
fn thread_cap_does_not_change_output() {
    let args = ["xi", "--k", "2", "--n", "5", "--json"];
    let base = Command::new(env!("CARGO_BIN_EXE_pa"))
        .args(args)
        .output()
        .expect("spawn");
    let capped = Command::new(env!("CARGO_BIN_EXE_pa"))
        .args(args)
        .env("PA_THREADS", "1")
        .output()
        .expect("spawn");
    assert_eq!(base.status.code(), Some(0));
    assert_eq!(capped.status.code(), Some(0));
    assert_eq!(base.stdout, capped.stdout);
}

#[test]
fn usage_errors_exit_two() {
    let (code, _, stderr) = run(&["frobnicate"]);
    assert_eq!(code, 2);
    assert!(!stderr.is_empty());
}

#[test]
fn malformed_partition_exits_two() {
    let (code, stdout, stderr) = run(&[
        "mul", "--basis", "orbit", "--level", "2", "--xi", "3", "--a", "1,2|3", "--b", "1,2,3,4",
    ]);
    assert_eq!(code, 2);
    assert!(stdout.is_empty());
    assert_eq!(stderr.lines().count(), 1, "stderr: {stderr}");
    assert!(stderr.starts_with("error:"), "stderr: {stderr}");
}

#[test]
fn coefficient_pole_exits_two() {
    let (code, _, stderr) = run(&["xi", "--k", "2", "--n", "2"]);
    assert_eq!(code, 2);
    assert_eq!(stderr.lines().count(), 1, "stderr: {stderr}");
    assert!(stderr.contains("pole"), "stderr: {stderr}");
}

#[test]
fn failed_verification_exits_one() {
    // The closure of a lower-level idempotent padded up to level 3 misses
    // one kernel dimension at n = 3, so the run reports pass: false.
    let (code, stdout, _) = run(&[
        "ideal", "close", "--level", "3", "--n", "3", "--gen", "e", "--from-level", "2", "--json",
    ]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&stdout).expect("closure JSON");
    assert_eq!(v["pass"], serde_json::json!(false));
    assert_eq!(v["kernel_dim"], serde_json::json!(81));
}

#[test]
fn pinned_ideal_closure_report() {
    let (code, stdout, _) = run(&["ideal", "close", "--level", "2", "--n", "3", "--gen", "e", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).expect("closure JSON");
    assert_eq!(v["dim"], serde_json::json!(1));
    assert_eq!(v["kernel_dim"], serde_json::json!(1));
    assert_eq!(v["pass"], serde_json::json!(true));
    assert!(v["rounds"].is_array());

    // The documented transcript at (2,2): generator span 1, one growth
    // round to 7, one stabilization round.
    let (code, stdout, _) = run(&["ideal", "close", "--level", "2", "--n", "2", "--gen", "e", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).expect("closure JSON");
    assert_eq!(v["rounds"], serde_json::json!([1, 7, 7]));
    assert_eq!(v["dim"], serde_json::json!(7));
    assert_eq!(v["kernel_dim"], serde_json::json!(7));
    assert_eq!(v["pass"], serde_json::json!(true));
}

#[test]
fn pinned_character_value() {
    let (code, stdout, _) = run(&["character", "--n", "4", "--j", "2", "--cycle-type", "1,1,1,1"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "2");
}

#[test]
fn enumerate_counts() {
    let (code, stdout, _) = run(&["enumerate", "--level", "2", "--count"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "15");
    let (code, stdout, _) = run(&["enumerate", "--level", "2", "--rook", "--count"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "7");
}

#[test]
fn kernel_summary() {
    let (code, stdout, _) = run(&["kernel", "--level", "2", "--n", "3", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).expect("kernel JSON");
    assert_eq!(v["ambient"], serde_json::json!("15"));
    assert_eq!(v["centralizer"], serde_json::json!(14));
    assert_eq!(v["kernel"], serde_json::json!(1));
}

#[test]
fn convert_produces_valid_element() {
    let (code, stdout, _) = run(&[
        "convert", "--level", "2", "--xi", "3", "--from", "diagram", "--pi", "1,3|2,4", "--json",
    ]);
    assert_eq!(code, 0);
    let el: AlgebraElement = serde_json::from_str(&stdout).expect("element JSON");
    assert_eq!(el.num_terms(), 2);
}
