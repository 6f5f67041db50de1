//! Verification checks over built complexes and their presentations, with
//! line-oriented reports.

mod checks;

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use serde::Serialize;

pub use checks::{
    closed_path_words, growth_census, half_perimeters, nil_check, verify_determinism,
    verify_structure, Census, ClosedWords,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Unknown,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Unknown => "UNKNOWN",
        })
    }
}

/// Witnesses kept per report.
pub const MAX_WITNESSES: usize = 8;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub check: String,
    pub scope: BTreeMap<String, String>,
    pub status: Status,
    /// Counts and other findings.
    pub notes: BTreeMap<String, String>,
    /// Failing instances, smallest first.
    pub witnesses: Vec<String>,
    pub millis: u64,
}

impl Report {
    pub fn new(check: &str) -> Self {
        Report {
            check: check.to_string(),
            scope: BTreeMap::new(),
            status: Status::Pass,
            notes: BTreeMap::new(),
            witnesses: Vec::new(),
            millis: 0,
        }
    }

    pub fn scope(mut self, key: &str, value: impl ToString) -> Self {
        self.scope.insert(key.to_string(), value.to_string());
        self
    }

    pub fn note(&mut self, key: &str, value: impl ToString) {
        self.notes.insert(key.to_string(), value.to_string());
    }

    pub fn fail(&mut self, witness: impl Into<String>) {
        self.status = Status::Fail;
        self.witness(witness);
    }

    /// Marks the report unknown unless it already failed.
    pub fn unknown(&mut self, witness: impl Into<String>) {
        self.status = self.status.max(Status::Unknown);
        self.witness(witness);
    }

    fn witness(&mut self, w: impl Into<String>) {
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(w.into());
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Runs `f` on a fresh report and records its wall time.
    pub fn timed(check: &str, f: impl FnOnce(&mut Report)) -> Report {
        let t = Instant::now();
        let mut r = Report::new(check);
        f(&mut r);
        r.millis = t.elapsed().as_millis() as u64;
        r
    }

    pub fn with_scope(mut self, scope: &BTreeMap<String, String>) -> Self {
        self.scope.extend(scope.clone());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

/// 0 when everything passed, 1 on any failure, 2 when only unknowns remain.
pub fn exit_code(reports: &[Report]) -> i32 {
    match reports.iter().map(|r| r.status).max() {
        Some(Status::Fail) => 1,
        Some(Status::Unknown) => 2,
        _ => 0,
    }
}

#[cfg(test)]
mod tests;
