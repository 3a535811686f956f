use thiserror::Error;

use crate::solver::ShiftResult;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported cost: {0}")]
    UnsupportedCost(String),

    /// The cost is not differentiable where `x == y`.
    #[error("gradient undefined at x == y")]
    SingularPoint,

    #[error("parse error{}: {message}", line.map(|l| format!(" at line {l}")).unwrap_or_default())]
    Parse { line: Option<usize>, message: String },

    #[error("instance too large for the exact solver: {entries} cost entries exceed the limit of {limit}; use a coarser grid")]
    SizeGuard { entries: usize, limit: usize },

    #[error("dual objective decreased at iteration {iteration} ({before} -> {after}) under fixed damping")]
    AscentNotMonotone { iteration: usize, before: f64, after: f64 },

    /// Carries the best iterate found before giving up.
    #[error("solver did not converge: residual {} after {} iterations", .0.residual, .0.iterations)]
    NotConverged(Box<ShiftResult>),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn parse(line: Option<usize>, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}
