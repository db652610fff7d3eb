use std::fmt;

use serde::{Deserialize, Serialize};

/// One failed condition inside a check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckFailure {
    pub location: String,
    pub detail: String,
}

/// Outcome of a named validation. An empty failure list means it passed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub failures: Vec<CheckFailure>,
}

impl CheckReport {
    pub fn new(check: impl Into<String>) -> Self {
        CheckReport { check: check.into(), failures: Vec::new() }
    }

    pub fn fail(&mut self, location: impl Into<String>, detail: impl Into<String>) {
        self.failures.push(CheckFailure { location: location.into(), detail: detail.into() });
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "{}: ok", self.check);
        }
        write!(f, "{}: {} failure(s)", self.check, self.failures.len())?;
        for x in &self.failures {
            write!(f, "\n  {}: {}", x.location, x.detail)?;
        }
        Ok(())
    }
}
