use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: max |M - M†| entry = {deviation:e} exceeds {tolerance:e}")]
    NotHermitian { deviation: f64, tolerance: f64 },

    #[error("eigenvalue iteration did not converge within {iterations} sweeps")]
    NoConvergence { iterations: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },

    #[error("unsupported dimension {dim}: expected 2, an odd prime <= 13, or 4")]
    UnsupportedDimension { dim: usize },

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("invalid quantum numbers: j = {j}, k = {k}, m = {m}")]
    InvalidQuantumNumbers { j: f64, k: i64, m: f64 },

    #[error("Bloch vector outside the ball: |theta|^2 = {norm_sq} > {limit}")]
    BallViolation { norm_sq: f64, limit: f64 },

    #[error("input density matrix is not Hermitian (max imaginary residue {residue:e})")]
    NonHermitianInput { residue: f64 },

    #[error("marginal subset is empty")]
    EmptySubset,

    #[error("negative probability {value:e} in basis {basis}: input is not a valid state")]
    NegativeProbability { basis: usize, value: f64 },

    #[error("measurement record has no counts")]
    EmptyRecord,

    #[error("LP is unbounded along the probe direction (polytope construction bug)")]
    LpUnbounded,

    #[error("LP is infeasible (phase-1 residual {residual:e})")]
    LpInfeasible { residual: f64 },

    #[error("{0}")]
    BadInput(String),
}
