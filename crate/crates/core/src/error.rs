use thiserror::Error;

/// Errors raised by the quaternion matrix routines.
///
/// Indices carried in variants are 1-based, matching the public
/// index conventions of [`crate::qmatrix`] and [`crate::eigen`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by a zero quaternion")]
    ZeroDivisor,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("matrix must have positive dimensions")]
    EmptyMatrix,

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian: entries ({row},{col}) and ({col},{row}) differ by {deviation:e} (tolerance {tolerance:e})")]
    NotHermitian {
        row: usize,
        col: usize,
        deviation: f64,
        tolerance: f64,
    },

    #[error("real matrix is not symmetric: entries ({row},{col}) differ by {deviation:e}")]
    NotSymmetric {
        row: usize,
        col: usize,
        deviation: f64,
    },

    #[error("index {index} out of range 1..={bound}")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("indices must differ (both are {index})")]
    EqualIndices { index: usize },

    #[error("dimension {n} exceeds the permutation-sum limit of {limit}")]
    ComplexityLimit { n: usize, limit: usize },

    #[error("Jacobi iteration did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("lifted spectrum does not split into quadruples: group {group} spreads {spread:e} (tolerance {tolerance:e})")]
    GroupingFailure {
        group: usize,
        spread: f64,
        tolerance: f64,
    },

    #[error("eigenvalue {index} is not simple: gap {gap:e} <= {tolerance:e}")]
    DegenerateEigenvalue {
        index: usize,
        gap: f64,
        tolerance: f64,
    },

    #[error("no usable pivot on the adjugate diagonal for eigenvalue {index}")]
    PivotFailure { index: usize },

    #[error("matrix has no zero right eigenvalue (closest is {closest:e})")]
    NoZeroEigenvalue { closest: f64 },

    #[error("identity violated: {what} = {value:e}")]
    IdentityViolation { what: String, value: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
