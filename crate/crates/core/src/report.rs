//! Verification reports: one record per check, serialized as JSON or a
//! markdown table.

use std::fmt::{Display, Write as _};

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    pub citation: String,
    pub route: String,
    pub computed: String,
    pub expected: String,
    pub status: Status,
    pub ledger: Vec<String>,
}

impl Check {
    /// Passes iff the rendered values agree.
    pub fn compare(
        id: impl Into<String>,
        citation: &str,
        route: &str,
        computed: impl Display,
        expected: impl Display,
    ) -> Self {
        let (computed, expected) = (computed.to_string(), expected.to_string());
        let status = if computed == expected { Status::Pass } else { Status::Fail };
        Check {
            id: id.into(),
            citation: citation.into(),
            route: route.into(),
            computed,
            expected,
            status,
            ledger: Vec::new(),
        }
    }

    /// A boolean property; `computed` and `expected` read `true`.
    pub fn holds(id: impl Into<String>, citation: &str, route: &str, ok: bool) -> Self {
        Check::compare(id, citation, route, ok, true)
    }

    pub fn with_ledger(mut self, ledger: Vec<String>) -> Self {
        self.ledger = ledger;
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub version: String,
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    /// Checks are sorted by id, so the output does not depend on the order
    /// they were produced in.
    pub fn new(seed: u64, mut checks: Vec<Check>) -> Self {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        VerificationReport { version: env!("CARGO_PKG_VERSION").into(), seed, checks }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failing_ids(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed()).map(|c| c.id.as_str()).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_markdown(&self) -> String {
        let mut s = format!(
            "seed {}\n\n| id | citation | route | computed | expected | status |\n|---|---|---|---|---|---|\n",
            self.seed
        );
        for c in &self.checks {
            let status = if c.passed() { "pass" } else { "FAIL" };
            let _ = writeln!(
                s,
                "| {} | {} | {} | {} | {} | {} |",
                c.id, c.citation, c.route, c.computed, c.expected, status
            );
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_and_status() {
        let r = VerificationReport::new(
            3,
            vec![
                Check::compare("b", "x", "closed-form", 8, 8),
                Check::compare("a", "x", "closed-form", 7, 8),
            ],
        );
        assert_eq!(r.checks[0].id, "a");
        assert!(!r.passed());
        assert_eq!(r.failing_ids(), vec!["a"]);
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["checks"][0]["status"], "fail");
        assert_eq!(v["seed"], 3);
        assert!(v["version"].is_string());
    }

    #[test]
    fn output_is_deterministic() {
        let make = |rev: bool| {
            let mut c = vec![Check::holds("p", "x", "r", true), Check::holds("q", "x", "r", true)];
            if rev {
                c.reverse();
            }
            VerificationReport::new(0, c).to_json()
        };
        assert_eq!(make(false), make(true));
    }
}
