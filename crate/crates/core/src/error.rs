use thiserror::Error;

use crate::entanglement::ReeResult;

/// Errors raised across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (‖M − M†‖_F = {deviation:.3e})")]
    NonHermitian { deviation: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("trace is not 1 (got {trace})")]
    TraceNotOne { trace: f64 },

    #[error("negative eigenvalue {eigenvalue:.3e} below support tolerance")]
    NegativeEigenvalue { eigenvalue: f64 },

    #[error("dimension mismatch: {0}")]
    DimMismatch(String),

    #[error("matrix is not unitary (‖U†U − I‖_F = {deviation:.3e})")]
    NotUnitary { deviation: f64 },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps")]
    EigenNoConvergence { sweeps: usize },

    #[error("Werner parameter γ = {0} outside [0, 1]")]
    GammaOutOfRange(f64),

    #[error("rank {rank} outside 1..={dim}")]
    RankOutOfRange { rank: usize, dim: usize },

    #[error("measurement operators are incomplete (‖Σ A†A − I‖_F = {deviation:.3e})")]
    IncompleteMeasurement { deviation: f64 },

    #[error("unsupported dimension: {0}")]
    UnsupportedDimension(String),

    #[error(
        "REE solver did not converge: value {:.6} bits, gap {:.3e} after {} iterations",
        .0.value, .0.gap, .0.iterations
    )]
    NotConverged(Box<ReeResult>),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
