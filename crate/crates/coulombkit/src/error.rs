//! Error type shared across the crate.

use thiserror::Error;

/// Everything that can go wrong in the library, with the violated rule named
/// so callers (and the CLI) can report it verbatim.
#[derive(Debug, Error)]
pub enum Error {
    /// Input JSON could not be parsed at all.
    #[error("malformed input: {0}")]
    Malformed(String),

    /// A structural invariant of the theory data was violated.
    #[error("invariant `{rule}` violated: {detail}")]
    Invariant { rule: &'static str, detail: String },

    /// An operation was called on a theory outside its domain.
    #[error("unsupported input for {op}: {detail}")]
    Unsupported { op: &'static str, detail: String },

    /// An enumeration exceeded its configured budget.
    #[error("budget exceeded in {op}: {detail} (raise COULOMBKIT_BUDGET to override)")]
    Budget { op: &'static str, detail: String },

    /// The reduced charge space is too large for the chamber decomposition.
    #[error("reduced charge-space dimension {dim} exceeds the configured limit {limit}; use the brute-force scan instead")]
    DimensionLimit { dim: usize, limit: usize },

    /// Integer arithmetic left the supported range.
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}

impl Error {
    pub fn invariant(rule: &'static str, detail: impl Into<String>) -> Self {
        Error::Invariant { rule, detail: detail.into() }
    }

    pub fn unsupported(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Unsupported { op, detail: detail.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
