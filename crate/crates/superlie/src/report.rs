//! Validation reports. Violations are data, not errors: validators return
//! the full list of failed identities and an empty report means valid.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Which identity failed, e.g. "jacobi" or "sigma-comodule".
    pub kind: String,
    /// Where it failed, e.g. the basis triple or table cell.
    pub site: String,
    pub detail: String,
}

impl Violation {
    pub fn new(kind: &str, site: impl Into<String>, detail: impl Into<String>) -> Violation {
        Violation {
            kind: kind.to_string(),
            site: site.into(),
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] at {}: {}", self.kind, self.site, self.detail)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn push(&mut self, v: Violation) {
        self.violations.push(v);
    }

    pub fn check(&mut self, ok: bool, kind: &str, site: impl Into<String>, detail: impl Into<String>) {
        if !ok {
            self.push(Violation::new(kind, site, detail));
        }
    }

    pub fn merge(&mut self, other: Report) {
        self.violations.extend(other.violations);
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn contains_kind(&self, kind: &str) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            write!(f, "ok")
        } else {
            for v in &self.violations {
                writeln!(f, "{v}")?;
            }
            Ok(())
        }
    }
}
