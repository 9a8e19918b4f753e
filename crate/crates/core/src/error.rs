use thiserror::Error;

/// Errors raised by the algebraic routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("substitution exponent must be nonzero")]
    ZeroExponent,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("cannot evaluate a Laurent polynomial with negative exponents at zero")]
    EvalAtZero,
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is not Hermitian under t -> t^-1")]
    NotHermitian,
    #[error("angle {0} is not in the open interval (0, 1)")]
    AngleOutOfRange(String),
    #[error("Seifert matrix is not admissible: {0}")]
    NotAdmissible(String),
    #[error("{0} requires an integral Seifert matrix")]
    RequiresIntegral(&'static str),
    #[error("covering formula hypothesis violated: {0}")]
    FormulaHypothesis(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
