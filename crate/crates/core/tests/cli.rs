use std::process::{Command, Output};

use superck_core::algebra::Signature;
use superck_core::ck::{ck_extend, Param};
use superck_core::report::{CheckResult, CommandEcho, Report, REPORT_SCHEMA};
use superck_core::text::parse;

fn superck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superck")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn validator() -> jsonschema::JSONSchema {
    let schema: serde_json::Value = serde_json::from_str(REPORT_SCHEMA).unwrap();
    jsonschema::JSONSchema::compile(&schema).unwrap()
}

#[test]
fn eval_examples() {
    let o = superck(&["eval", "--m", "2", "--n", "1", "--expr", "X(x)^2 + NORM2(x)"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "0");
    let o = superck(&["eval", "--m", "1", "--n", "1", "--expr", "eg1*eg2 - eg2*eg1"]);
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn diff_and_integrate() {
    let o = superck(&["diff", "--m", "2", "--op", "partial", "--var", "x1", "--expr", "x1^3*x2"]);
    assert_eq!(stdout(&o).trim(), "3*x1^2*x2");
    let o = superck(&["diff", "--m", "0", "--n", "1", "--op", "partial", "--var", "xg1", "--expr", "xg1*xg2"]);
    assert_eq!(stdout(&o).trim(), "xg2");
    // the sphere integral of 1 is sigma_M, which for (0|2) is 2 pi^-1 / Gamma(-1) = 0
    let o = superck(&["integrate", "--m", "0", "--n", "1", "--expr", "1"]);
    assert_eq!(stdout(&o).trim(), "0");
    let o = superck(&["integrate", "--m", "0", "--n", "1", "--method", "normalized", "--expr", "1"]);
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn ck_extend_emits_series_json() {
    let o = superck(&["ck-extend", "--m", "3", "--p", "1", "--expr", "y1", "--format", "json"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["case"], "i");
    assert_eq!(v["block"], "x");
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms[0]["j"], 0);
    assert_eq!(terms[0]["element"], "y1");
    assert_eq!(terms.len(), 2);
}

#[test]
fn planewave_matches_ck_extend() {
    let args = ["--m", "2", "--n", "2", "--p", "1", "--q", "1", "--expr", "y1^2 - yg1*yg2", "--odd", "y1"];
    let mut pw = vec!["planewave"];
    pw.extend(args);
    let o = superck(&pw);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let sig = Signature::builder().block("x", 2, 2).block_sharing("w", "x").block("y", 1, 1).build().unwrap();
    let f0 = parse(&sig, "y1^2 - yg1*yg2").unwrap();
    let odd = parse(&sig, "y1").unwrap();
    let ck = ck_extend(&f0, 0, Param::Block(2), Some(&odd)).unwrap().materialize(&sig);
    assert_eq!(parse(&sig, stdout(&o).trim()).unwrap(), ck);
}

#[test]
fn cauchy_pwdck_passes() {
    let o = superck(&["cauchy", "--m", "0", "--n", "1", "--kernel", "pwdck", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["kernel"], v["decomposition"]);
}

#[test]
fn errors_exit_with_two() {
    assert_eq!(superck(&["eval", "--expr", "x1 +"]).status.code(), Some(2));
    assert_eq!(superck(&["verify", "--suite", "nonsense"]).status.code(), Some(2));
    assert_eq!(superck(&["cauchy", "--m", "1", "--n", "1"]).status.code(), Some(2));
}

#[test]
fn verify_reports_are_byte_stable_and_valid() {
    let args = ["verify", "--suite", "ck", "--m", "2", "--n", "1", "--degree", "3", "--format", "json"];
    let a = superck(&args);
    assert_eq!(a.status.code(), Some(0));
    let b = Command::new(env!("CARGO_BIN_EXE_superck")).args(args).env("SUPERCK_THREADS", "1").output().unwrap();
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(validator().is_valid(&v));
    let r: Report = serde_json::from_value(v).unwrap();
    assert!(r.summary.total > 0 && r.summary.failed == 0);
}

#[test]
fn text_format_renders_the_same_checks() {
    let j = superck(&["verify", "--suite", "sl2", "--grid", "small", "--format", "json"]);
    let t = superck(&["verify", "--suite", "sl2", "--grid", "small", "--format", "text"]);
    let r: Report = serde_json::from_slice(&j.stdout).unwrap();
    let text = stdout(&t);
    for c in &r.checks {
        assert!(text.contains(&format!("PASS {} [{}]", c.name, c.anchor)), "{}", c.name);
    }
    assert!(text
        .trim_end()
        .ends_with(&format!("{} checks: {} passed, 0 failed, 0 skipped", r.summary.total, r.summary.passed)));
}

#[test]
fn schema_rejects_fail_without_witness() {
    let echo = CommandEcho {
        verb: "verify".into(),
        suite: Some("algebra".into()),
        degree: 4,
        seed: 1,
        cases: 1,
        ..Default::default()
    };
    let good = Report::new(echo.clone(), vec![CheckResult::fail("a", "b", "x1")]);
    let mut v = serde_json::to_value(&good).unwrap();
    assert!(validator().is_valid(&v));
    v["checks"][0].as_object_mut().unwrap().remove("witness");
    assert!(!validator().is_valid(&v));
    let skipped = Report::new(echo, vec![CheckResult::skipped("a", "b", "why")]);
    let mut v = serde_json::to_value(&skipped).unwrap();
    assert!(validator().is_valid(&v));
    v["checks"][0]["status"] = "maybe".into();
    assert!(!validator().is_valid(&v));
}
