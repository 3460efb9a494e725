//! End-to-end tests against the built binary: exit-code contract, the
//! standalone reduce/eval commands, and the JSON report.

use std::path::Path;
use std::process::{Command, Output};

fn fgr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fgr"))
        .args(args)
        .env_remove("FGR_TOL")
        .env_remove("FGR_TRUNCATION")
        .env_remove("FGR_JSON")
        .env_remove("FGR_PARALLEL")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn verify_all_exits_zero_with_full_pass() {
    let out = fgr(&["verify"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("62 of 62 claims passed"), "{text}");
    assert!(text.contains("Gamma = 1/2*sqrt2*p1 exactly"), "{text}");
}

#[test]
fn verify_single_claim() {
    let out = fgr(&["verify", "gamma_151"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("PASS gamma_151"));
}

#[test]
fn unknown_claim_is_a_usage_error() {
    let out = fgr(&["verify", "nonexistent"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown claim"));
}

#[test]
fn reduce_to_core_basis() {
    let out = fgr(&["reduce", "r3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "sqrt2*p1 - r1 + s1");
}

#[test]
fn reduce_rejects_unknown_family_with_position() {
    let out = fgr(&["reduce", "p1 + z9"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("byte 5"), "{err}");
    assert!(err.contains("unknown family"), "{err}");
}

#[test]
fn eval_matches_closed_form() {
    let out = fgr(&["eval", "p1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let value: f64 = text.split_whitespace().next().unwrap().parse().unwrap();
    let closed = std::f64::consts::PI / (std::f64::consts::FRAC_PI_2).cosh();
    assert!((value - closed).abs() < 1e-12, "{text}");
}

#[test]
fn constants_prints_the_headline_values() {
    let out = fgr(&["constants"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("Gamma (exact)      = 1/2*sqrt2*p1"), "{text}");
    assert!(text.contains("0.885326"), "{text}");
    assert!(text.contains("1.252040"), "{text}");
    assert!(text.contains("c0"), "{text}");
}

#[test]
fn json_report_roundtrips_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = fgr(&["report", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
    let reserialized = serde_json::to_string_pretty(&parsed).unwrap();
    assert_eq!(text, reserialized);
    // and the schema essentials are present
    assert!(parsed["claims"].as_array().unwrap().len() >= 25);
    assert_eq!(parsed["gamma"]["symbolic"], "1/2*sqrt2*p1");
    for claim in parsed["claims"].as_array().unwrap() {
        assert_eq!(claim["exact_match"], true, "{}", claim["id"]);
        assert_eq!(claim["passed"], true, "{}", claim["id"]);
    }
}

fn normalized_report(path: &Path) -> serde_json::Value {
    let mut v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    for claim in v["claims"].as_array_mut().unwrap() {
        claim["elapsed_ms"] = 0.0.into();
    }
    v
}

#[test]
fn parallel_report_is_identical_modulo_timing() {
    let dir = tempfile::tempdir().unwrap();
    let seq = dir.path().join("seq.json");
    let par = dir.path().join("par.json");
    assert!(fgr(&["report", seq.to_str().unwrap()]).status.success());
    assert!(fgr(&["--parallel", "report", par.to_str().unwrap()]).status.success());
    assert_eq!(normalized_report(&seq), normalized_report(&par));
}

#[test]
fn bad_truncation_is_rejected() {
    let out = fgr(&["--truncation", "5", "constants"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("tail bound"));
}

#[test]
fn env_vars_mirror_flags() {
    let out = Command::new(env!("CARGO_BIN_EXE_fgr"))
        .args(["constants"])
        .env("FGR_TRUNCATION", "5")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("tail bound"));
}
