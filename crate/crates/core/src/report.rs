//! Check records and suite reports.

use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// Failed, and the failure is the predicted outcome.
    ExpectedFail,
    /// Passed although a failure was predicted.
    UnexpectedPass,
    Skip,
}

impl Status {
    /// Whether the record counts as a success for the suite.
    pub fn ok(self) -> bool {
        matches!(self, Status::Pass | Status::ExpectedFail | Status::Skip)
    }

    /// Status of a check whose outcome `passed`, given whether it was `expected` to pass.
    pub fn judge(passed: bool, expected: bool) -> Status {
        match (passed, expected) {
            (true, true) => Status::Pass,
            (false, true) => Status::Fail,
            (false, false) => Status::ExpectedFail,
            (true, false) => Status::UnexpectedPass,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::ExpectedFail => "xfail",
            Status::UnexpectedPass => "XPASS",
            Status::Skip => "skip",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residue: Option<String>,
    pub millis: f64,
}

impl CheckRecord {
    pub fn new(id: impl Into<String>, anchor: impl Into<String>, status: Status, residue: Option<String>) -> Self {
        CheckRecord { id: id.into(), anchor: anchor.into(), status, residue, millis: 0.0 }
    }

    /// Builds a record from a pass/fail outcome with an optional residue.
    pub fn outcome(id: impl Into<String>, anchor: impl Into<String>, passed: bool, expected: bool, residue: Option<String>) -> Self {
        Self::new(id, anchor, Status::judge(passed, expected), residue)
    }

    pub fn timed(mut self, start: Instant) -> Self {
        self.millis = start.elapsed().as_secs_f64() * 1e3;
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<CheckRecord>,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>) -> Self {
        SuiteReport { suite: suite.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, r: CheckRecord) {
        self.checks.push(r);
    }

    pub fn extend(&mut self, rs: impl IntoIterator<Item = CheckRecord>) {
        self.checks.extend(rs);
    }

    /// Prefixes every check id, keeping ids unique across merged reports.
    pub fn prefixed(mut self, prefix: &str) -> Self {
        for c in &mut self.checks {
            c.id = format!("{prefix}/{}", c.id);
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status.ok())
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.status.ok())
    }

    pub fn count(&self, s: Status) -> usize {
        self.checks.iter().filter(|c| c.status == s).count()
    }

    pub fn sort(&mut self) {
        self.checks.sort_by(|a, b| a.id.cmp(&b.id));
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.checks.iter().map(|c| c.id.len()).max().unwrap_or(0).min(72);
        writeln!(f, "suite {}", self.suite)?;
        for c in &self.checks {
            write!(f, "  {:<5}  {:<width$}  {:>9.2}ms  {}", c.status.to_string(), c.id, c.millis, c.anchor)?;
            if let Some(r) = &c.residue {
                write!(f, "  residue: {r}")?;
            }
            writeln!(f)?;
        }
        write!(
            f,
            "  {} checks: {} pass, {} xfail, {} fail, {} xpass, {} skip",
            self.checks.len(),
            self.count(Status::Pass),
            self.count(Status::ExpectedFail),
            self.count(Status::Fail),
            self.count(Status::UnexpectedPass),
            self.count(Status::Skip)
        )
    }
}
