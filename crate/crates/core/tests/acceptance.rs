//! Acceptance criteria 1 to 10. Runs without the libtest harness and prints one line per
//! criterion. Every comparison is exact.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use superck_core::algebra::{Signature, SuperElement as E};
use superck_core::random::{random_poly, rng};
use superck_core::report::{CheckResult, Report, Status, REPORT_SCHEMA};
use superck_core::suites::{run_suite, Grid};
use superck_core::text::{parse, render};

type Outcome = Result<String, String>;

/// Title, check and time budget in seconds.
type Criterion = (&'static str, fn() -> Outcome, u64);

fn grid(cases: usize) -> Grid {
    Grid { cases, ..Grid::default() }
}

/// Fails on any failed check. Skips are allowed only with a reason, and are counted.
fn all_pass(checks: &[CheckResult]) -> Outcome {
    if checks.is_empty() {
        return Err("no checks ran".into());
    }
    if let Some(f) = checks.iter().find(|c| c.status == Status::Fail) {
        return Err(format!("{}: {}", f.name, f.witness.as_deref().unwrap_or("")));
    }
    let skipped = checks.iter().filter(|c| c.status == Status::Skipped).count();
    Ok(format!("{} checks, {} skipped", checks.len(), skipped))
}

fn suite(name: &str, g: &Grid, anchors: &[&str]) -> Result<Vec<CheckResult>, String> {
    let checks = run_suite(name, g).map_err(|e| e.to_string())?;
    Ok(checks.into_iter().filter(|c| anchors.is_empty() || anchors.contains(&c.anchor.as_str())).collect())
}

fn require(checks: &[CheckResult], names: &[&str]) -> Result<(), String> {
    for n in names {
        match checks.iter().find(|c| c.name == *n) {
            Some(c) if c.status == Status::Pass => {}
            Some(c) => return Err(format!("{n} is {:?}", c.status)),
            None => return Err(format!("{n} did not run")),
        }
    }
    Ok(())
}

fn c1() -> Outcome {
    all_pass(&suite("algebra", &grid(5), &["dirac-on-powers", "norm-squared", "clifford-rules"])?)
}

fn c2() -> Outcome {
    all_pass(&suite("sl2", &grid(50), &[])?)
}

fn c3() -> Outcome {
    let g = Grid { ms: vec![1, 2, 3], degree: 6, ..Grid::default() };
    let checks = suite("pizzetti", &g, &[])?;
    require(&checks, &["pizzetti/negative-even-vanishing/m=2,n=2", "pizzetti/oracle/m=3,n=2,d=6"])?;
    all_pass(&checks)
}

fn c4() -> Outcome {
    let checks = suite("funkhecke", &grid(5), &[])?;
    require(&checks, &["funkhecke/theorem/m=3,n=2,l=3", "funkhecke/normalized/m=2,n=2,l=3"])?;
    all_pass(&checks)
}

fn c5() -> Outcome {
    let checks = suite("ck", &grid(25), &[])?;
    require(
        &checks,
        &["ck/block-parameter/m=3,n=0,p=1,q=0", "ck/block-parameter/m=2,n=2,p=2,q=1", "ck/x0-parameter/m=0,n=2"],
    )?;
    all_pass(&checks)
}

fn c6() -> Outcome {
    let anchors = ["plane-wave-decomposition", "plane-wave-decomposition-x0", "antiderivative-independence"];
    let checks = suite("planewave", &grid(25), &anchors)?;
    require(&checks, &["planewave/antiderivative-independence/m=2,n=2", "planewave/reproduces-ck/m=2,n=1,p=1,q=1"])?;
    all_pass(&checks)
}

fn c7() -> Outcome {
    let checks = suite("planewave", &grid(1), &["holomorphic-plane-wave-integral", "normalized-plane-wave-integral"])?;
    require(
        &checks,
        &[
            "planewave/holomorphic-integral/m=1,n=0",
            "planewave/holomorphic-integral/m=3,n=1",
            "planewave/normalized-monomials/m=0,n=1",
            "planewave/normalized-monomials/m=0,n=2",
            "planewave/normalized-monomials/m=2,n=2",
        ],
    )?;
    all_pass(&checks)
}

fn c8() -> Outcome {
    let g = Grid { degree: 4, ..grid(1) };
    let checks = suite("cauchy", &g, &["cauchy-kernel", "appell-log", "sigma-product"])?;
    require(&checks, &["cauchy/appell-log", "cauchy/sigma-product", "cauchy/kernel/m=3,n=0"])?;
    all_pass(&checks)
}

fn c9() -> Outcome {
    let checks = suite("cauchy", &grid(1), &["cauchy-plane-waves"])?;
    require(
        &checks,
        &[
            "cauchy/plane-wave-decomposition/m=0,n=1",
            "cauchy/plane-wave-decomposition/m=0,n=2",
            "cauchy/plane-wave-decomposition/m=1,n=0",
            "cauchy/plane-wave-decomposition/m=2,n=0",
            "cauchy/plane-wave-decomposition/m=3,n=0",
            "cauchy/plane-wave-decomposition/m=2,n=2",
        ],
    )?;
    all_pass(&checks)
}

fn c10() -> Outcome {
    for (m, n) in [(0, 1), (1, 0), (2, 1), (3, 2)] {
        let sig = Signature::builder().block("x", m, n).block("y", 1, 1).build().map_err(|e| e.to_string())?;
        let mut r = rng(1000 + 10 * m as u64 + n as u64);
        for i in 0..200 {
            let f = random_poly(&sig, i % 2, 4, 5, true, &mut r) * E::x0(&sig).pow((i % 3) as u32);
            let back = parse(&sig, &render(&f)).map_err(|e| format!("{}: {e}", render(&f)))?;
            if back != f {
                return Err(format!("round trip changed {}", render(&f)));
            }
        }
    }
    let out = Command::new(env!("CARGO_BIN_EXE_superck"))
        .args(["verify", "--suite", "all", "--format", "json"])
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("verify exited with {:?}", out.status.code()));
    }
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let schema: serde_json::Value = serde_json::from_str(REPORT_SCHEMA).map_err(|e| e.to_string())?;
    let validator = jsonschema::JSONSchema::compile(&schema).map_err(|e| e.to_string())?;
    if let Err(errors) = validator.validate(&value) {
        return Err(errors.map(|e| e.to_string()).collect::<Vec<_>>().join("; "));
    }
    let report: Report = serde_json::from_value(value).map_err(|e| e.to_string())?;
    Ok(format!("800 round trips, verify --suite all: {} checks", report.summary.total))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("algebra consistency", c1, 10),
        ("sl2 relations and Laplacian powers", c2, 30),
        ("Pizzetti integral against the delta pairing", c3, 60),
        ("Funk-Hecke theorem and its normalized form", c4, 120),
        ("generalized CK-extension", c5, 120),
        ("plane-wave decomposition of the CK-extension", c6, 180),
        ("holomorphic plane-wave integrals", c7, 120),
        ("Cauchy kernel", c8, 60),
        ("plane-wave decomposition of the Cauchy kernel", c9, 180),
        ("command line round trip and verify", c10, 600),
    ];
    let mut failed = 0;
    for (i, (title, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panic: {}", msg.unwrap_or_default()))
        });
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(_) if took > Duration::from_secs(*budget) => Err(format!("took {took:.1?}, budget {budget} s")),
            o => o,
        };
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {title} ({detail}; {took:.1?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {title}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
