//! End-to-end behaviour of the `kkv` command line.

use std::process::Command;

use kkv_cli::output::Format;
use kkv_cli::suites::Check;
use kkv_cli::{render_checks, run, verdict, EXIT_CHECK_FAILED, EXIT_INSUFFICIENT_PRECISION, EXIT_NOT_QUASIMODULAR, EXIT_OK, EXIT_USAGE};
use kkv_core::modforms::inverse_discriminant_q;
use kkv_core::series::format_series;
use serde_json::Value;

fn kkv(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("kkv").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn table_csv_rows() {
    let (code, out, _) = kkv(&["table", "--kind", "r", "--gmax", "2", "--hmax", "2", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "g,h,value");
    assert!(lines.contains(&"0,1,24/1"));
    assert!(lines.contains(&"1,1,-2/1"));
}

#[test]
fn table_single_and_euler() {
    let (code, out, _) = kkv(&["table", "--kind", "r", "--gmax", "0", "--hmax", "0", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "g,h,value\n0,0,1/1\n");
    let (_, out, _) = kkv(&["table", "--kind", "euler", "--nmax", "3", "--hmax", "0", "--format", "json"]);
    let v: Vec<Value> = serde_json::from_str(&out).unwrap();
    let values: Vec<&str> = v.iter().map(|r| r["value"].as_str().unwrap()).collect();
    assert_eq!(values, ["1/1", "2/1", "3/1"]);
    assert_eq!(v[0]["n"], 1);
}

#[test]
fn table_kinds_and_json_round_trip() {
    for kind in ["r", "R", "euler", "C", "euler_pk"] {
        let args = ["table", "--kind", kind, "--gmax", "3", "--hmax", "3", "--nmax", "3", "--k", "1", "--format", "json"];
        let (code, out, err) = kkv(&args);
        assert_eq!(code, EXIT_OK, "{kind}: {err}");
        let parsed: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(serde_json::to_string_pretty(&parsed).unwrap() + "\n", out, "{kind}");
        // Deterministic across runs.
        assert_eq!(kkv(&args).1, out);
    }
    let (_, out, _) = kkv(&["table", "--kind", "C", "--hmax", "2", "--nmax", "2", "--k", "1", "--format", "json"]);
    let v: Vec<Value> = serde_json::from_str(&out).unwrap();
    assert!(v.iter().all(|r| r.as_object().unwrap().keys().cloned().collect::<Vec<_>>() == ["k", "n", "h", "value"]));
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.csv");
    let (code, out, _) = kkv(&["table", "--kind", "r", "--gmax", "1", "--hmax", "1", "--format", "csv", "--output", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    assert_eq!(std::fs::read_to_string(path).unwrap(), "g,h,value\n0,0,1/1\n0,1,24/1\n1,0,0/1\n1,1,-2/1\n");
}

#[test]
fn invalid_flags_exit_2() {
    assert_eq!(kkv(&["table", "--kind", "x"]).0, EXIT_USAGE);
    assert_eq!(kkv(&["table", "--kind", "r", "--hmax", "-1"]).0, EXIT_USAGE);
    assert_eq!(kkv(&["table", "--kind", "r", "--bogus"]).0, EXIT_USAGE);
    assert_eq!(kkv(&["vertex", "--mu", "1,2"]).0, EXIT_USAGE);
    assert_eq!(kkv(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(kkv(&["--help"]).0, EXIT_OK);
}

#[test]
fn verify_suites_pass() {
    for args in [
        vec!["verify", "--suite", "appendixB", "--qorder", "30"],
        vec!["verify", "--suite", "gwpt", "--hmax", "4", "--uorder", "16"],
        vec!["verify", "--suite", "vertex", "--mu", "3", "--excess", "4"],
        vec!["verify", "--suite", "kkv", "--gmax", "4", "--hmax", "4"],
        vec!["verify", "--suite", "points", "--hmax", "3", "--nmax", "3"],
    ] {
        let (code, out, err) = kkv(&args);
        assert_eq!(code, EXIT_OK, "{args:?}\n{out}{err}");
        assert!(out.lines().all(|l| l.starts_with("PASS")), "{out}");
    }
    let (code, out, _) = kkv(&["verify", "--suite", "vertex", "--mu", "2,1", "--excess", "1", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: Vec<Value> = serde_json::from_str(&out).unwrap();
    assert!(v.iter().all(|c| c["passed"] == true));
}

#[test]
fn recognize_examples() {
    let dir = tempfile::tempdir().unwrap();
    let mut t0 = String::from("var=q order=12\n");
    for n in 0..=12i64 {
        let sigma: i64 = (1..=n).filter(|d| n % d == 0).sum();
        t0 += &format!("{n}: {}\n", n * sigma);
    }
    let t0 = write_temp(&dir, "t0.txt", &t0);
    let (code, out, _) = kkv(&["recognize", &t0, "--weight-max", "4"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "E2^0*E4^1*E6^0: 1/288\nE2^2*E4^0*E6^0: -1/288\n");

    let inv = write_temp(&dir, "inv.txt", &format_series(&inverse_discriminant_q(10)));
    let (code, out, _) = kkv(&["recognize", &inv, "--weight-max", "0", "--delta-pole"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "E2^0*E4^0*E6^0: 1/1\n");
    assert_eq!(kkv(&["recognize", &inv, "--weight-max", "0"]).0, EXIT_NOT_QUASIMODULAR);

    let mut exp = String::from("var=q order=14\n");
    let mut fact: i64 = 1;
    for n in 0..=14i64 {
        if n > 0 {
            fact *= n;
        }
        exp += &format!("{n}: 1/{fact}\n");
    }
    let exp = write_temp(&dir, "exp.txt", &exp);
    assert_eq!(kkv(&["recognize", &exp, "--weight-max", "4"]).0, EXIT_NOT_QUASIMODULAR);
    assert_eq!(kkv(&["recognize", &t0, "--weight-max", "12"]).0, EXIT_INSUFFICIENT_PRECISION);

    let junk = write_temp(&dir, "junk.txt", "not a series\n");
    assert_eq!(kkv(&["recognize", &junk, "--weight-max", "4"]).0, EXIT_USAGE);
}

#[test]
fn vertex_json() {
    let (code, out, _) = kkv(&["vertex", "--mu", "2,1", "--excess", "3", "--audit", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: Vec<Value> = serde_json::from_str(&out).unwrap();
    assert_eq!(v[0]["chain"], serde_json::json!([[2, 1]]));
    assert_eq!(v[0]["q_size"], 0);
    for row in &v {
        assert_eq!(row["h677"], row["direct"]);
        assert_eq!(row["formula_matches"], true);
    }
    let (_, empty, _) = kkv(&["vertex", "--mu", "", "--format", "csv"]);
    assert_eq!(empty.lines().count(), 2);
}

#[test]
fn failed_check_exits_3() {
    let checks = [Check::pass("a", ""), Check::fail("b", "first mismatch at q^7")];
    assert_eq!(verdict(&checks), EXIT_CHECK_FAILED);
    assert_eq!(verdict(&checks[..1]), EXIT_OK);
    let text = render_checks(&checks, Format::Text).unwrap();
    assert_eq!(text, "PASS  a\nFAIL  b: first mismatch at q^7\n");
}

#[test]
fn binary_exit_codes_and_threads() {
    let bin = env!("CARGO_BIN_EXE_kkv");
    let status = Command::new(bin).args(["table", "--kind", "r", "--hmax", "2", "--gmax", "1"]).env("KKV_THREADS", "1").output().unwrap();
    assert_eq!(status.status.code(), Some(0));
    let one = String::from_utf8(status.stdout).unwrap();
    let many = Command::new(bin).args(["table", "--kind", "r", "--hmax", "2", "--gmax", "1"]).output().unwrap();
    assert_eq!(String::from_utf8(many.stdout).unwrap(), one);
    let bad = Command::new(bin).args(["table", "--kind", "r"]).env("KKV_THREADS", "zero").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
