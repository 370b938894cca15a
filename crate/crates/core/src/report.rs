//! Machine-readable verification reports.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Budget,
    Experiment,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Budget => "budget",
            Status::Experiment => "experiment",
        };
        f.write_str(s)
    }
}

/// One verified claim.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub expected: String,
    pub actual: String,
    /// Short identifier of the mathematical statement being checked.
    pub anchor: String,
    pub elapsed_ms: u64,
}

impl Check {
    pub fn new(
        name: impl Into<String>,
        status: Status,
        expected: impl ToString,
        actual: impl ToString,
        anchor: impl Into<String>,
    ) -> Self {
        Check {
            name: name.into(),
            status,
            expected: expected.to_string(),
            actual: actual.to_string(),
            anchor: anchor.into(),
            elapsed_ms: 0,
        }
    }

    /// Pass/fail from a boolean.
    pub fn verdict(
        name: impl Into<String>,
        ok: bool,
        expected: impl ToString,
        actual: impl ToString,
        anchor: impl Into<String>,
    ) -> Self {
        let status = if ok { Status::Pass } else { Status::Fail };
        Check::new(name, status, expected, actual, anchor)
    }

    /// Equality check on displayable values.
    pub fn equal<T: PartialEq + fmt::Display>(
        name: impl Into<String>,
        expected: T,
        actual: T,
        anchor: impl Into<String>,
    ) -> Self {
        let ok = expected == actual;
        Check::verdict(name, ok, expected, actual, anchor)
    }

    pub fn timed(mut self, started: Instant) -> Self {
        self.elapsed_ms = started.elapsed().as_millis() as u64;
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub suite: String,
    pub parameters: BTreeMap<String, serde_json::Value>,
    pub checks: Vec<Check>,
    pub version: String,
}

impl CheckReport {
    pub fn new(suite: impl Into<String>) -> Self {
        CheckReport {
            suite: suite.into(),
            parameters: BTreeMap::new(),
            checks: Vec::new(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.checks.extend(other.checks);
    }

    /// Stable presentation order: by check name.
    pub fn sort(&mut self) {
        self.checks.sort_by(|a, b| a.name.cmp(&b.name));
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    /// Experiments and budget aborts never fail a run.
    pub fn ok(&self) -> bool {
        self.count(Status::Fail) == 0
    }

    pub fn exit_code(&self) -> i32 {
        if self.ok() {
            0
        } else {
            1
        }
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("suite {} (v{})\n", self.suite, self.version);
        for (k, v) in &self.parameters {
            out.push_str(&format!("  {k} = {v}\n"));
        }
        for c in &self.checks {
            out.push_str(&format!(
                "[{:>10}] {}  expected={} actual={}  ({} ms)\n",
                c.status, c.name, c.expected, c.actual, c.elapsed_ms
            ));
        }
        out.push_str(&format!(
            "{} pass, {} fail, {} budget, {} experiment\n",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Budget),
            self.count(Status::Experiment)
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_code_ignores_experiments() {
        let mut r = CheckReport::new("x");
        r.push(Check::new("a", Status::Experiment, 1, 0, "conj"));
        r.push(Check::new("b", Status::Budget, "-", "-", "conj"));
        assert_eq!(r.exit_code(), 0);
        r.push(Check::equal("c", 1, 2, "thm"));
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn json_round_trip() {
        let mut r = CheckReport::new("identities").param("max_m", 5);
        r.push(Check::equal("c", 1, 1, "identity"));
        let back: CheckReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(r.to_json().contains("\"status\": \"pass\""));
    }
}
