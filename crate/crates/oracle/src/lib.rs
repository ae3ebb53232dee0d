//! Reference numerics for checking `figdist`.
//!
//! Everything here is written independently of the library under test:
//! an adaptive Gauss–Kronrod integrator, central finite differences,
//! Kolmogorov–Smirnov statistics, a dense grid search and plain bisection.
//! These routines favour robustness over speed. They are slow on purpose
//! and should only appear in tests, examples and acceptance runs.

mod diff;
mod ks;
mod quadrature;
mod search;

pub use diff::finite_difference_gradient;
pub use ks::{ks_critical_value, ks_statistic, ks_two_sample, ks_two_sample_critical_value};
pub use quadrature::{integrate, QuadratureResult, MAX_SUBDIVISIONS};
pub use search::{bisect, grid_argmax};

/// Failure modes of the reference routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OracleError {
    #[error("empty sample")]
    EmptySample,
    #[error("function returned a non-finite value at {at:?}")]
    NonFinite { at: Vec<f64> },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
