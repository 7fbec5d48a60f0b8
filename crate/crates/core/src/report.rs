//! Verification reports: individual checks, summary counts and their JSON and text forms.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

/// Outcome of a single check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    /// Short identifier of the identity being checked.
    pub anchor: String,
    pub status: Status,
    /// Counterexample in canonical text form. Present exactly when the check failed.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
    /// Why a check was skipped.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
}

impl CheckResult {
    pub fn pass(name: impl Into<String>, anchor: impl Into<String>) -> Self {
        CheckResult { name: name.into(), anchor: anchor.into(), status: Status::Pass, witness: None, reason: None }
    }

    pub fn fail(name: impl Into<String>, anchor: impl Into<String>, witness: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            anchor: anchor.into(),
            status: Status::Fail,
            witness: Some(witness.into()),
            reason: None,
        }
    }

    pub fn skipped(name: impl Into<String>, anchor: impl Into<String>, reason: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            anchor: anchor.into(),
            status: Status::Skipped,
            witness: None,
            reason: Some(reason.into()),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

/// The flags a report was produced with, so the run can be repeated.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommandEcho {
    pub verb: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub suite: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub grid: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub p: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub q: Option<usize>,
    pub degree: usize,
    pub seed: u64,
    pub cases: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: CommandEcho,
    pub checks: Vec<CheckResult>,
    pub summary: Summary,
    /// Only filled in on request; it would make reports differ between runs.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_time_ms: Option<u64>,
}

pub const SCHEMA_VERSION: u32 = 1;

/// The JSON schema of `Report`, shipped with the crate.
pub const REPORT_SCHEMA: &str = include_str!("../schema/report.schema.json");

impl Report {
    pub fn new(command: CommandEcho, checks: Vec<CheckResult>) -> Report {
        let mut summary = Summary { total: checks.len(), ..Summary::default() };
        for c in &checks {
            match c.status {
                Status::Pass => summary.passed += 1,
                Status::Fail => summary.failed += 1,
                Status::Skipped => summary.skipped += 1,
            }
        }
        Report { schema_version: SCHEMA_VERSION, command, checks, summary, wall_time_ms: None }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let c = &self.command;
        let _ = write!(s, "{}", c.verb);
        if let Some(suite) = &c.suite {
            let _ = write!(s, " --suite {suite}");
        }
        if let Some(grid) = &c.grid {
            let _ = write!(s, " --grid {grid}");
        }
        for (flag, v) in [("m", c.m), ("n", c.n), ("p", c.p), ("q", c.q)] {
            if let Some(v) = v {
                let _ = write!(s, " --{flag} {v}");
            }
        }
        let _ = writeln!(s, " --degree {} --seed {} --cases {}", c.degree, c.seed, c.cases);
        for ch in &self.checks {
            let tag = match ch.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            let _ = write!(s, "{tag} {} [{}]", ch.name, ch.anchor);
            if let Some(w) = &ch.witness {
                let _ = write!(s, "\n     witness: {w}");
            }
            if let Some(r) = &ch.reason {
                let _ = write!(s, " ({r})");
            }
            s.push('\n');
        }
        let m = &self.summary;
        let _ = write!(s, "{} checks: {} passed, {} failed, {} skipped", m.total, m.passed, m.failed, m.skipped);
        if let Some(t) = self.wall_time_ms {
            let _ = write!(s, " in {t} ms");
        }
        s.push('\n');
        s
    }
}
