//! Structured verification results.
//!
//! Every verifier in this crate returns a list of [`CheckResult`]s instead of
//! panicking: a failed identity carries a concrete witness, and a check that
//! cannot run in the given setting is marked skipped with the reason. Reports
//! serialize to JSON with a fixed field order, so identical inputs produce
//! byte-identical output.

use num::BigRational;
use serde::Serialize;
use std::fmt;

#[derive(Serialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// Outcome of one named check: the identity in plain formula form, the
/// status, and a witness (a counterexample for failures, a reason for skips,
/// occasionally a certificate for passes).
#[derive(Serialize, Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub statement: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckResult {
    pub fn pass(name: &str, statement: &str) -> Self {
        CheckResult {
            name: name.to_string(),
            statement: statement.to_string(),
            status: Status::Pass,
            witness: None,
        }
    }

    pub fn pass_with(name: &str, statement: &str, note: String) -> Self {
        CheckResult { witness: Some(note), ..Self::pass(name, statement) }
    }

    pub fn fail(name: &str, statement: &str, witness: String) -> Self {
        CheckResult {
            name: name.to_string(),
            statement: statement.to_string(),
            status: Status::Fail,
            witness: Some(witness),
        }
    }

    pub fn skipped(name: &str, statement: &str, reason: &str) -> Self {
        CheckResult {
            name: name.to_string(),
            statement: statement.to_string(),
            status: Status::Skipped,
            witness: Some(reason.to_string()),
        }
    }

    /// Pass/fail from a flag; the witness closure runs only on failure.
    pub fn from_flag(
        name: &str,
        statement: &str,
        ok: bool,
        witness: impl FnOnce() -> String,
    ) -> Self {
        if ok {
            Self::pass(name, statement)
        } else {
            Self::fail(name, statement, witness())
        }
    }

    /// Same result under a namespaced check name.
    pub fn prefixed(mut self, prefix: &str) -> Self {
        self.name = format!("{prefix}-{}", self.name);
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        write!(f, "{tag} {}", self.name)?;
        if let Some(w) = &self.witness {
            write!(f, " [{w}]")?;
        }
        Ok(())
    }
}

/// A full verification run over one instance.
#[derive(Serialize, Clone, Debug)]
pub struct Report {
    pub instance: String,
    pub dimension: usize,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn new(instance: &str, dimension: usize, checks: Vec<CheckResult>) -> Self {
        let passed = checks.iter().all(|c| c.passed());
        Report { instance: instance.to_string(), dimension, passed, checks }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        let mut c = (0, 0, 0);
        for r in &self.checks {
            match r.status {
                Status::Pass => c.0 += 1,
                Status::Fail => c.1 += 1,
                Status::Skipped => c.2 += 1,
            }
        }
        c
    }
}

/// Namespaces every check name in a batch.
pub fn with_prefix(prefix: &str, checks: Vec<CheckResult>) -> Vec<CheckResult> {
    checks.into_iter().map(|c| c.prefixed(prefix)).collect()
}

/// Renders a rational with an explicit denominator, keeping exactness
/// visible even for whole values.
pub fn rat_str(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigRational;

    #[test]
    fn witness_field_omitted_when_absent() {
        let r = Report::new("demo", 4, vec![
            CheckResult::pass("a", "x = x"),
            CheckResult::fail("b", "x = y", "x ≠ y at e_0".into()),
        ]);
        let json = r.to_json();
        assert!(!r.passed);
        // Frozen snapshot: field order and layout are part of the contract.
        let expected = "{\n  \"instance\": \"demo\",\n  \"dimension\": 4,\n  \"passed\": false,\n  \"checks\": [\n    {\n      \"name\": \"a\",\n      \"statement\": \"x = x\",\n      \"status\": \"pass\"\n    },\n    {\n      \"name\": \"b\",\n      \"statement\": \"x = y\",\n      \"status\": \"fail\",\n      \"witness\": \"x ≠ y at e_0\"\n    }\n  ]\n}";
        assert_eq!(json, expected);
    }

    #[test]
    fn skipped_does_not_fail_a_report() {
        let r = Report::new("demo", 1, vec![
            CheckResult::pass("a", "s"),
            CheckResult::skipped("b", "s", "needs a unit"),
        ]);
        assert!(r.passed);
        assert_eq!(r.counts(), (1, 0, 1));
    }

    #[test]
    fn rational_rendering_keeps_denominator() {
        let half = BigRational::new(1.into(), 2.into());
        let three = BigRational::from_integer(3.into());
        assert_eq!(rat_str(&half), "1/2");
        assert_eq!(rat_str(&three), "3/1");
    }
}
