use thiserror::Error;

/// Errors raised by state, matrix and inequality constructors and operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension {0} exceeds the supported maximum of {1}")]
    DimensionOverflow(usize, usize),
    #[error("non-finite component encountered in {0}")]
    NonFinite(&'static str),
    #[error("observable is not Hermitian within tolerance {tol}")]
    NotHermitian { tol: f64 },
    #[error("expectation value has imaginary residue {residue} above tolerance {tol}")]
    ImaginaryResidue { residue: f64, tol: f64 },
    #[error("state vector norm {norm} deviates from 1 beyond tolerance {tol}")]
    NotNormalized { norm: f64, tol: f64 },
    #[error("state dimension {0} is not a power of two <= 16")]
    BadStateDimension(usize),
    #[error("{0}")]
    InvalidArgument(String),
    #[error("invalid outcome distribution: {0}")]
    InvalidDistribution(String),
}

pub type Result<T> = std::result::Result<T, Error>;
