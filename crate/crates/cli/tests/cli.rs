//! End-to-end tests of the `boole` binary: output formats, flag validation,
//! and the exit-code contract (0 success, 1 failure, 2 usage).

use std::process::{Command, Output};

fn boole(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_boole"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 stderr")
}

#[test]
fn compute_boole_constant_term() {
    let out = boole(&["compute", "boole", "--n", "0", "--lambda", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1/2\n");
}

#[test]
fn compute_euler_second_order_value() {
    let out = boole(&["compute", "euler", "--n", "1", "--k", "2", "--x", "0"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "-1\n");
}

#[test]
fn compute_changhee_polynomial() {
    let out = boole(&["compute", "changhee", "--n", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "x^2 - 2*x + 1/2\n");
}

#[test]
fn compute_euler_json_lists_the_sequence() {
    let out = boole(&["compute", "euler", "--n", "2", "--format", "json"]);
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(
        parsed,
        serde_json::json!([["1"], ["-1/2", "1"], ["0", "-1", "1"]])
    );
}

#[test]
fn compute_boole_json_carries_the_parameters() {
    let out = boole(&[
        "compute", "boole2", "--n", "1", "--lambda", "1/2", "--format", "json",
    ]);
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(parsed["kind"], "second");
    assert_eq!(parsed["lambda"], "1/2");
    assert_eq!(parsed["order_k"], 1);
    assert_eq!(parsed["polys"], serde_json::json!([["1/2"], ["1/8", "1/2"]]));
}

#[test]
fn compute_routes_agree_and_euler_route_needs_nonzero_lambda() {
    let gf = boole(&["compute", "boole", "--n", "3", "--lambda", "2"]);
    let eu = boole(&["compute", "boole", "--n", "3", "--lambda", "2", "--route", "euler"]);
    assert!(gf.status.success());
    assert!(eu.status.success());
    assert_eq!(stdout(&gf), stdout(&eu));

    let zero = boole(&["compute", "boole", "--n", "1", "--lambda", "0", "--route", "euler"]);
    assert_eq!(zero.status.code(), Some(1));
    let zero_gf = boole(&["compute", "boole", "--n", "1", "--lambda", "0"]);
    assert!(zero_gf.status.success());
    assert_eq!(stdout(&zero_gf), "1/2*x\n");
}

#[test]
fn compute_usage_errors() {
    let missing_lambda = boole(&["compute", "boole", "--n", "2"]);
    assert_eq!(missing_lambda.status.code(), Some(2));

    let unknown = boole(&["compute", "bernoulli", "--n", "2"]);
    assert_eq!(unknown.status.code(), Some(2));

    let decimal = boole(&["compute", "boole", "--n", "1", "--lambda", "0.5"]);
    assert_eq!(decimal.status.code(), Some(2));

    let missing_n = boole(&["compute", "euler"]);
    assert_eq!(missing_n.status.code(), Some(2));
}

#[test]
fn table_triangles() {
    let s2 = boole(&["table", "--kind", "s2", "--max-n", "1"]);
    assert!(s2.status.success());
    assert_eq!(stdout(&s2), "n,l,value\n0,0,1\n1,0,0\n1,1,1\n");

    let s1 = boole(&["table", "--kind", "s1", "--max-n", "3"]);
    assert!(stdout(&s1).contains("3,2,-3\n"));

    let s1u = boole(&["table", "--kind", "s1u", "--max-n", "3"]);
    assert!(stdout(&s1u).contains("3,2,3\n"));
}

#[test]
fn table_usage_errors() {
    let over_cap = boole(&["table", "--kind", "s2", "--max-n", "100"]);
    assert_eq!(over_cap.status.code(), Some(2));
    let raised_cap = boole(&["table", "--kind", "s2", "--max-n", "100", "--cap", "128"]);
    assert!(raised_cap.status.success());
    let bad_kind = boole(&["table", "--kind", "s3", "--max-n", "3"]);
    assert_eq!(bad_kind.status.code(), Some(2));
}

#[test]
fn witt_agreement_and_validation() {
    let out = boole(&["witt", "--p", "3", "--N", "2", "--n", "1", "--lambda", "1", "--x", "0"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["lhs_residue"], 4);
    assert_eq!(report["rhs_residue"], 4);
    assert_eq!(report["modulus"], 9);
    assert_eq!(report["agree"], true);

    let trivial = boole(&["witt", "--p", "5", "--N", "1", "--n", "0", "--lambda", "2", "--x", "1"]);
    assert!(trivial.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&trivial)).unwrap();
    assert_eq!(report["lhs_residue"], 1);
    assert_eq!(report["rhs_residue"], 1);
    assert_eq!(report["modulus"], 5);

    let plain = boole(&[
        "witt", "--p", "3", "--N", "2", "--n", "1", "--lambda", "1", "--x", "0", "--format",
        "plain",
    ]);
    assert_eq!(stdout(&plain), "agree 4 = 4 mod 9\n");

    let not_prime = boole(&["witt", "--p", "4", "--N", "1", "--n", "1", "--lambda", "1", "--x", "0"]);
    assert_eq!(not_prime.status.code(), Some(2));
    assert!(stderr(&not_prime).contains("odd prime"));

    let bad_denominator = boole(&[
        "witt", "--p", "3", "--N", "2", "--n", "1", "--lambda", "1/3", "--x", "0",
    ]);
    assert_eq!(bad_denominator.status.code(), Some(1));
    assert!(stderr(&bad_denominator).contains("not a unit"));
}

#[test]
fn witt_second_kind_and_higher_order() {
    let second = boole(&[
        "witt", "--p", "3", "--N", "2", "--n", "1", "--lambda", "2", "--x", "0", "--kind",
        "second",
    ]);
    assert!(second.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&second)).unwrap();
    assert_eq!(report["lhs_residue"], 1);
    assert_eq!(report["rhs_residue"], 1);

    let order2 = boole(&[
        "witt", "--p", "5", "--N", "2", "--n", "3", "--lambda", "2", "--x", "1", "--k", "2",
        "--M", "3",
    ]);
    assert!(order2.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&order2)).unwrap();
    assert_eq!(report["agree"], true);
    assert_eq!(report["M"], 3);
    assert_eq!(report["N"], 2);
}

#[test]
fn witt_term_budget_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_boole"))
        .args([
            "witt", "--p", "3", "--N", "2", "--n", "1", "--lambda", "1", "--x", "0", "--k", "2",
        ])
        .env("BOOLE_TERM_BUDGET", "10")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("budget"));

    let enough = Command::new(env!("CARGO_BIN_EXE_boole"))
        .args([
            "witt", "--p", "3", "--N", "2", "--n", "1", "--lambda", "1", "--x", "0", "--k", "2",
        ])
        .env("BOOLE_TERM_BUDGET", "100")
        .output()
        .expect("binary runs");
    assert!(enough.status.success());
}

#[test]
fn verify_single_identity() {
    let out = boole(&["verify", "--id", "thm2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("thm2"));
    assert!(text.contains("result: ok"));
    assert!(!text.contains("thm3"));
}

#[test]
fn verify_expected_fail_identity_exits_zero() {
    let out = boole(&["verify", "--id", "thm6b_printed", "--format", "json"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let counts = &report["summary"]["thm6b_printed"];
    assert!(counts["fail"].as_u64().unwrap() > 0);
    assert_eq!(counts["error"].as_u64().unwrap(), 0);
    let failing = report["cases"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["status"] == "fail")
        .expect("at least one failing case");
    assert!(failing["witness"]["lhs"] != failing["witness"]["rhs"]);
}

#[test]
fn verify_zero_lambda_reports_errors_and_fails() {
    let out = boole(&["verify", "--id", "thm2", "--lambda", "0", "--m-max", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("result: FAIL"));
}

#[test]
fn verify_rejects_unknown_identity() {
    let out = boole(&["verify", "--id", "thm9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_json_is_deterministic() {
    let args = ["verify", "--id", "thm4a", "--format", "json"];
    let a = boole(&args);
    let b = boole(&args);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
}
