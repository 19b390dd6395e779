use thiserror::Error;

/// Errors produced by the exact and numeric routines of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unsupported dimension {0} (supported: 1..=4)")]
    UnsupportedDimension(usize),

    #[error("zero polynomial has no support")]
    ZeroPolynomial,

    #[error("empty input")]
    EmptyInput,

    #[error("direction entries must be strictly positive")]
    NonPositiveDirection,

    #[error("q must be strictly positive")]
    NonPositiveWeight,

    #[error("indicator is not locally bounded off the origin")]
    NotInI0,

    #[error("polynomials share a common component")]
    CommonComponent,

    #[error("polynomial must have positive degree in variable {0}")]
    ZeroDegree(usize),

    #[error("root iteration did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Largest ambient dimension handled by the exact engines.
pub const MAX_DIM: usize = 4;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}
