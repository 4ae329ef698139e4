use std::fmt;

use serde::Serialize;

/// A single failed check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub check: String,
    pub location: String,
    pub expected: String,
    pub actual: String,
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}: expected {}, got {}", self.check, self.location, self.expected, self.actual)
    }
}

/// Outcome of a verification pass: how many facts were checked and which
/// ones failed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub check: String,
    pub checked: usize,
    pub findings: Vec<Finding>,
    /// Informational remarks, e.g. sub-audits skipped by hypothesis.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(check: impl Into<String>) -> Self {
        Report { check: check.into(), ..Report::default() }
    }

    pub fn passed(&self) -> bool {
        self.findings.is_empty()
    }

    /// Record one checked fact; a failure adds a finding under `check`.
    pub fn expect(
        &mut self,
        ok: bool,
        check: &str,
        location: impl FnOnce() -> String,
        expected: impl FnOnce() -> String,
        actual: impl FnOnce() -> String,
    ) -> bool {
        self.checked += 1;
        if !ok {
            self.findings.push(Finding {
                check: check.to_string(),
                location: location(),
                expected: expected(),
                actual: actual(),
            });
        }
        ok
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// Fold another report's counts and findings into this one.
    pub fn absorb(&mut self, other: Report) {
        self.checked += other.checked;
        self.findings.extend(other.findings);
        self.notes.extend(other.notes);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} ({} checked, {} findings)",
            self.check,
            if self.passed() { "pass" } else { "FAIL" },
            self.checked,
            self.findings.len()
        )
    }
}
