//! Error type shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit index {index} out of range for {n_qubits} qubits")]
    SiteOutOfRange { index: usize, n_qubits: usize },

    #[error("term sites must be non-empty and strictly increasing")]
    BadTermSites,

    #[error("{n_qubits} qubits exceeds the cap of {cap}; raise the cap explicitly if the memory is really there")]
    QubitCapExceeded { n_qubits: usize, cap: usize },

    #[error("diagonal length {len} is not a nonzero power of two")]
    BadDiagonalLength { len: usize },

    #[error("diagonal contains a non-finite entry at index {index}")]
    NonFiniteDiagonal { index: usize },

    #[error("spectral bandwidth is zero; schedules cannot be calibrated against a flat spectrum")]
    ZeroBandwidth,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("schedule was calibrated for a different instance ({detail})")]
    CalibrationMismatch { detail: String },

    #[error("state norm drifted by {norm_error:.3e} (tolerance {tol:.3e}); integration failed")]
    NormDrift { norm_error: f64, tol: f64 },

    #[error("step size underflow at t = {t:.6e}; the problem is too stiff for the requested tolerance")]
    StepUnderflow { t: f64 },

    #[error("step budget of {max_steps} exhausted at t = {t:.6e}")]
    StepBudgetExceeded { t: f64, max_steps: u64 },

    #[error("probability {value:.3e} is negative beyond rounding tolerance")]
    NegativeProbability { value: f64 },

    #[error("dimension mismatch: {detail}")]
    DimensionMismatch { detail: String },

    #[error("file format: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Process exit code for this error: 1 for usage/input problems, 2 for
    /// numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NormDrift { .. }
            | Error::StepUnderflow { .. }
            | Error::StepBudgetExceeded { .. }
            | Error::NegativeProbability { .. } => 2,
            _ => 1,
        }
    }
}
