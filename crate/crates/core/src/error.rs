use std::fmt;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FigError {
    /// An argument is outside the function's domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// An iterative routine hit its iteration cap.
    #[error("{routine} did not converge within {iterations} iterations")]
    NonConvergence { routine: &'static str, iterations: usize },
    /// The requested quantity is infinite (e.g. an MGF outside its region).
    #[error("divergent: {0}")]
    Divergent(String),
    /// The sub-model has no finite FIG parameterisation.
    #[error("sub-model cannot be represented: {0}")]
    Unrepresentable(String),
    /// Input data are unusable.
    #[error("data error: {0}")]
    Data(String),
    /// The observed information matrix is not positive definite.
    #[error("information matrix not positive definite: {0}")]
    NotPositiveDefinite(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, FigError>;

pub(crate) fn domain(msg: impl fmt::Display) -> FigError {
    FigError::Domain(msg.to_string())
}

impl From<std::io::Error> for FigError {
    fn from(e: std::io::Error) -> Self {
        FigError::Io(e.to_string())
    }
}
