use thiserror::Error;

/// Errors raised by the chain-complex model and the invariant computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch in boundary {degree}: expected {expected_rows}x{expected_cols}, found {rows}x{cols}")]
    ShapeMismatch {
        degree: usize,
        expected_rows: usize,
        expected_cols: usize,
        rows: usize,
        cols: usize,
    },

    #[error("boundary {degree} composed with boundary {} is nonzero at entry ({row}, {col})", degree + 1)]
    BoundarySquareNonzero {
        degree: usize,
        row: usize,
        col: usize,
    },

    #[error("degree {degree} out of range (allowed {min}..={max})")]
    DegreeOutOfRange {
        degree: usize,
        min: usize,
        max: usize,
    },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("modulus k must be at least 1")]
    InvalidModulus,

    #[error("complex is not connected (b_0 = {betti0})")]
    NotConnected { betti0: usize },

    #[error("enumeration of {what} exceeds cap {cap}")]
    EnumerationCapExceeded { what: String, cap: u64 },

    #[error("ill-formed torsion pairing: {0}")]
    IllFormedPairing(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
