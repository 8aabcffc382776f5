use thiserror::Error;

use crate::report::LawReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Tables that do not even index-check (out-of-range entries, wrong lengths,
    /// mistyped morphisms). Distinct from law violations.
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("law violations: {0}")]
    Laws(LawReport),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("no extension of {f} along the unit at ({a}, {b})")]
    NoExtension { a: String, b: String, f: String },

    #[error("extension of {f} along the unit at ({a}, {b}) is not unique: {g1} and {g2}")]
    NonUniqueExtension {
        a: String,
        b: String,
        f: String,
        g1: String,
        g2: String,
    },

    /// A cross-check between two independently computed characterisations
    /// disagreed. Never expected on valid inputs.
    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("exhausted: {0}")]
    Exhausted(Exhaustion),

    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
        expected: Vec<String>,
    },

    #[error("unknown {kind} `{name}`")]
    UnknownName { kind: &'static str, name: String },

    #[error("search refused: estimated {estimate} candidate tables exceeds cap {cap}")]
    TooLarge { estimate: u128, cap: u128 },

    #[error("too many algebras to materialise: {count} > cap {cap}")]
    AlgebraCap { count: usize, cap: usize },
}

/// Which bound a bounded construction ran into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exhaustion {
    MaxWordLength(usize),
    MaxClasses(usize),
}

impl std::fmt::Display for Exhaustion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Exhaustion::MaxWordLength(n) => write!(f, "max word length {n} reached"),
            Exhaustion::MaxClasses(n) => write!(f, "max morphism classes {n} reached"),
        }
    }
}
