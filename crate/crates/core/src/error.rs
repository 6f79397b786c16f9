use thiserror::Error;

/// Errors raised by the arithmetic, lattice and modular-form layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// The caller violated a documented precondition.
    #[error("usage error: {0}")]
    Usage(String),

    #[error("degenerate lattice basis: {0}")]
    Degenerate(String),

    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("lattice is not closed under multiplication: basis pair ({0}, {1})")]
    NotClosed(usize, usize),

    #[error("invalid order: {0}")]
    InvalidOrder(String),

    #[error("element is not invertible (norm zero)")]
    NotInvertible,

    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("no two-sided ideal of norm {0}")]
    NoTwoSidedIdeal(u64),

    #[error("indefinite binary form [{0}, {1}, {2}]")]
    Indefinite(i64, i64, i64),

    #[error("coefficient at [{a}, {b}, {c}] lies beyond the valid bound {bound}")]
    Truncation { a: i64, b: i64, c: i64, bound: i64 },

    #[error("not an eigenform at this bound: {0}")]
    NotEigenform(String),

    #[error("eigenvalue indeterminate: all comparable coefficients vanish")]
    Indeterminate,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("character sum does not collapse to a rational: {0}")]
    Cyclotomic(String),

    #[error("pole of the local factor at p = {p}, j = {j}")]
    Pole { p: u64, j: i64 },

    #[error("factorization search limit exceeded for degree {0}")]
    FactorLimit(usize),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
