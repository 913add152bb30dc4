use alloc::string::String;

/// Errors raised by the exact and floating-point routines of this crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid distribution vector: {0}")]
    InvalidDistribution(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{what} = {value} is outside the supported range {range}")]
    OutOfRange {
        what: &'static str,
        value: usize,
        range: &'static str,
    },
    #[error("subspace is not contained in the enclosing subspace")]
    NotContained,
    #[error("subspace is not contained in the zero row sum matrices")]
    NotZeroRowSum,
    #[error("matrix is not a rate matrix")]
    NotRateMatrix,
    #[error("subspace is not a module: generator {generator} moves basis element {basis_index} out of the span")]
    NotModule {
        generator: String,
        basis_index: usize,
    },
    #[error("non-finite value encountered: {0}")]
    NonFinite(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}
