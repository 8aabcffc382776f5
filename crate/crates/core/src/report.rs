//! Law reports shared by every checker in the crate.

use std::fmt;

use serde::Serialize;

/// One violated instance of a law, with a human-readable witness naming the
/// offending morphisms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawViolation {
    pub law: &'static str,
    pub witness: String,
}

/// The outcome of an exhaustive law check: the list of laws that were checked
/// and every instance that failed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub checked: Vec<&'static str>,
    pub violations: Vec<LawViolation>,
}

impl LawReport {
    pub fn new(laws: &[&'static str]) -> Self {
        LawReport {
            checked: laws.to_vec(),
            violations: Vec::new(),
        }
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violate(&mut self, law: &'static str, witness: impl Into<String>) {
        debug_assert!(self.checked.contains(&law), "unregistered law {law}");
        self.violations.push(LawViolation {
            law,
            witness: witness.into(),
        });
    }

    pub fn violations_of<'a>(&'a self, law: &'a str) -> impl Iterator<Item = &'a LawViolation> {
        self.violations.iter().filter(move |v| v.law == law)
    }

    /// Per-law summary: `(law, ok, first witness)`.
    pub fn summary(&self) -> Vec<(&'static str, bool, Option<&str>)> {
        self.checked
            .iter()
            .map(|&law| {
                let first = self.violations_of(law).next();
                (law, first.is_none(), first.map(|v| v.witness.as_str()))
            })
            .collect()
    }

    pub fn merge(&mut self, other: LawReport) {
        for law in other.checked {
            if !self.checked.contains(&law) {
                self.checked.push(law);
            }
        }
        self.violations.extend(other.violations);
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "all laws hold");
        }
        let shown: Vec<_> = self
            .violations
            .iter()
            .take(4)
            .map(|v| format!("{} at {}", v.law, v.witness))
            .collect();
        write!(f, "{}", shown.join("; "))?;
        if self.violations.len() > 4 {
            write!(f, "; ... ({} total)", self.violations.len())?;
        }
        Ok(())
    }
}
