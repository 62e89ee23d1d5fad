use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A `ModelParams` (or grid) invariant was violated.
    #[error("invalid parameters: {0}")]
    Validation(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    /// Jacobi sweeps exhausted before the off-diagonal norm fell below tolerance.
    #[error(
        "eigensolver did not converge after {sweeps} sweeps (relative off-diagonal norm {residual:e}){}",
        lambda.map(|l| format!(" at lambda = {l}")).unwrap_or_default()
    )]
    NonConvergence {
        sweeps: usize,
        residual: f64,
        lambda: Option<f64>,
    },

    #[error("cross-parity entry ({row}, {col}) = {value:e} is nonzero")]
    BlockLeak { row: usize, col: usize, value: f64 },

    #[error("basis mismatch: dimension {left} vs {right}")]
    BasisMismatch { left: usize, right: usize },

    #[error("state vector is not normalized (norm^2 = {norm_sq})")]
    NotNormalized { norm_sq: f64 },

    #[error("ambiguous state tracking for state {index}: best overlap {overlap} < 1/sqrt(2)")]
    AmbiguousTracking { index: usize, overlap: f64 },

    #[error("schema mismatch: {0}")]
    SchemaMismatch(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Process exit code for the CLI: 1 usage/validation, 2 numerical, 3 IO.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Validation(_) | Error::Usage(_) | Error::SchemaMismatch(_) => 1,
            Error::InvalidMatrix(_)
            | Error::NonConvergence { .. }
            | Error::BlockLeak { .. }
            | Error::BasisMismatch { .. }
            | Error::NotNormalized { .. }
            | Error::AmbiguousTracking { .. } => 2,
            Error::Io { .. } => 3,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Attach the coupling strength to a solver failure.
    pub(crate) fn at_lambda(self, lam: f64) -> Self {
        match self {
            Error::NonConvergence {
                sweeps, residual, ..
            } => Error::NonConvergence {
                sweeps,
                residual,
                lambda: Some(lam),
            },
            other => other,
        }
    }
}
