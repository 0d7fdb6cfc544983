//! Exact combinatorics of three-dimensional quiver gauge theories: the
//! integer dimension grading on magnetic charges, good/ugly/bad
//! classification with machine-checkable certificates, root-system data,
//! complete-intersection tests for moment-map fibers, stratification posets
//! for both branches of vacua, truncated Hilbert series with dressing
//! factors, and the rank-one surface family.
//!
//! Everything is computed over the integers (or exact rationals); there is
//! no floating point anywhere. Budgeted enumeration keeps every search
//! finite and reproducible.
//!
//! Conventions, fixed across the crate:
//! - Charges live in the theory's own (co)weight lattice: one integer per
//!   diagonal gauge direction, with the central quotient handled by pinning
//!   one coordinate to zero.
//! - Series and minima are graded by the doubled dimension `2Δ`, which is
//!   always an integer.

pub mod chambers;
pub mod ci;
pub mod classify;
pub mod cone;
pub mod error;
pub mod linalg;
pub mod monopole;
pub mod partitions;
pub mod quiver;
pub mod roots;
pub mod series;
pub mod strata;
pub mod surface;

pub use ci::{ci_check_framed, ci_check_unframed, CiReport, Decomposition, DecompositionPool};
pub use classify::{classify_theory, Certificate, Classification, Verdict};
pub use error::{Error, Result};
pub use monopole::{two_delta, Coweight};
pub use quiver::{DimVector, GaugeTheory, GraphClass, GroupConvention, Quiver};
pub use series::{
    expand_rational, molien_cyclic, monopole_series, RationalSeriesSpec, TruncatedSeries,
};

/// Budgets and guards for every potentially large computation. All
/// enumerations charge against one of these counters and fail with
/// [`Error::Budget`] (or [`Error::DimensionLimit`]) instead of running away.
#[derive(Debug, Clone)]
pub struct Limits {
    /// Largest reduced charge-lattice dimension the chamber decomposition
    /// will attempt.
    pub max_reduced_dim: usize,
    /// Cap on the number of sign chambers.
    pub max_chambers: usize,
    /// Cap on combinatorial enumerations (decompositions, poset elements).
    pub enum_budget: u64,
    /// Cap on lattice points visited by charge scans.
    pub scan_budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_reduced_dim: 10,
            max_chambers: 50_000,
            enum_budget: 1_000_000,
            scan_budget: 5_000_000,
        }
    }
}

impl Limits {
    /// Default limits, with both enumeration budgets overridden by the
    /// `COULOMBKIT_BUDGET` environment variable when it holds a positive
    /// integer.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Ok(raw) = std::env::var("COULOMBKIT_BUDGET") {
            if let Ok(budget) = raw.trim().parse::<u64>() {
                if budget > 0 {
                    limits.enum_budget = budget;
                    limits.scan_budget = budget;
                }
            }
        }
        limits
    }
}
