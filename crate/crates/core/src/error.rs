use thiserror::Error;

/// Everything that can go wrong inside the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid dimension {dim}: {reason}")]
    InvalidDimension { dim: usize, reason: &'static str },

    #[error("matrix is not square: row {row} has {len} entries, expected {dim}")]
    NotSquare { row: usize, len: usize, dim: usize },

    #[error("non-finite entry at position {index}")]
    NonFinite { index: usize },

    #[error("vector norm {norm} deviates from 1")]
    NotNormalized { norm: f64 },

    #[error("matrix is not Hermitian (max |M - M*| = {residual})")]
    NotHermitian { residual: f64 },

    #[error("matrix is not a projector (max |P^2 - P| = {residual})")]
    NotProjector { residual: f64 },

    #[error("projector has rank {rank}, expected rank 1")]
    NotRankOne { rank: usize },

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal {off_diagonal})")]
    NonConvergence { sweeps: usize, off_diagonal: f64 },

    #[error("expectation has imaginary residue {imaginary}")]
    NonRealExpectation { imaginary: f64 },

    #[error("basis is not orthonormal (max |<a|b> - delta| = {residual})")]
    NonOrthonormalBasis { residual: f64 },

    #[error("basis has {found} vectors, dimension is {dim}")]
    IncompleteBasis { found: usize, dim: usize },

    #[error("projector {index} received value {value}, which is neither 0 nor 1")]
    DichotomyViolation { index: usize, value: f64 },

    #[error("operators do not satisfy the linear relation (max residual {residual})")]
    RelationNotSatisfiedByOperators { residual: f64 },

    #[error("search space of {size} exceeds limit {limit}")]
    SearchSpaceTooLarge { size: u128, limit: u128 },

    #[error("invalid density operator: {0}")]
    InvalidDensity(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
