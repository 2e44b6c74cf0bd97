use std::fmt;

/// Error type shared by all operations in this crate.
///
/// Row and column positions carried by the variants are 1-based, matching
/// the human numbering used in the text formats and in diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// First data line of a matrix/vector file is not a positive integer.
    MalformedHeader { line: usize, token: String },
    /// A data row does not contain exactly the expected number of values.
    RowLengthMismatch {
        row: usize,
        expected: usize,
        got: usize,
    },
    /// A token could not be parsed as a finite decimal literal.
    NonNumericToken {
        line: usize,
        column: usize,
        token: String,
    },
    /// Input ended before all declared rows were read.
    TooFewRows { expected: usize, got: usize },
    /// Entry count does not match the declared order.
    InvalidDimensions { expected: usize, got: usize },
    /// An entry is NaN or infinite.
    NonFiniteEntry { row: usize, col: usize },
    /// An entry violates the positivity condition `t[i][j] > 0`.
    NonPositiveEntry { row: usize, col: usize, value: f64 },
    /// A diagonal entry is smaller than the sum of the other entries in its row.
    DominanceViolated {
        row: usize,
        row_sum: f64,
        diag: f64,
    },
    /// Symmetry was requested and `t[i][j] != t[j][i]`.
    NotSymmetric { row: usize, col: usize },
    /// The operation needs a matrix that was validated as symmetric.
    SymmetryRequired,
    /// Matrix order below the minimum for the operation (no off-diagonal
    /// entries exist for n < 2).
    OrderTooSmall { n: usize },
    /// Scalar parameters outside their admissible range.
    InvalidParams(String),
    /// A function argument fell outside its domain interval.
    DomainError { value: f64, lo: f64, hi: f64 },
    /// A factorization pivot fell below the singularity threshold.
    SingularMatrix { pivot_row: usize },
    /// Vector length does not match the matrix order.
    DimensionMismatch { expected: usize, got: usize },
    /// The matrix is not numerically positive definite.
    NotPositiveDefinite,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::MalformedHeader { line, token } => {
                write!(f, "MalformedHeader(line {line}): expected a positive integer order, got {token:?}")
            }
            Error::RowLengthMismatch { row, expected, got } => {
                write!(f, "RowLengthMismatch({row}): expected {expected} values, got {got}")
            }
            Error::NonNumericToken { line, column, token } => {
                write!(f, "NonNumericToken({line},{column}): {token:?} is not a finite decimal literal")
            }
            Error::TooFewRows { expected, got } => {
                write!(f, "TooFewRows: expected {expected} data rows, got {got}")
            }
            Error::InvalidDimensions { expected, got } => {
                write!(f, "InvalidDimensions: expected {expected} entries, got {got}")
            }
            Error::NonFiniteEntry { row, col } => {
                write!(f, "NonFiniteEntry({row},{col}): entries must be finite")
            }
            Error::NonPositiveEntry { row, col, value } => {
                write!(f, "NonPositiveEntry({row},{col}): entries must be > 0, got {value}")
            }
            Error::DominanceViolated { row, row_sum, diag } => {
                write!(f, "DominanceViolated({row}, {row_sum}, {diag}): diagonal entry is below its off-diagonal row sum")
            }
            Error::NotSymmetric { row, col } => {
                write!(f, "NotSymmetric({row},{col}): t[{row}][{col}] != t[{col}][{row}]")
            }
            Error::SymmetryRequired => {
                write!(f, "SymmetryRequired: operation needs a matrix validated as symmetric")
            }
            Error::OrderTooSmall { n } => {
                write!(f, "OrderTooSmall: order {n} has no off-diagonal entries; n >= 2 required")
            }
            Error::InvalidParams(msg) => write!(f, "InvalidParams: {msg}"),
            Error::DomainError { value, lo, hi } => {
                write!(f, "DomainError: {value} outside [{lo}, {hi}]")
            }
            Error::SingularMatrix { pivot_row } => {
                write!(f, "SingularMatrix: pivot below threshold at row {pivot_row}")
            }
            Error::DimensionMismatch { expected, got } => {
                write!(f, "DimensionMismatch: expected length {expected}, got {got}")
            }
            Error::NotPositiveDefinite => write!(f, "NotPositiveDefinite"),
        }
    }
}

impl std::error::Error for Error {}

impl Error {
    /// True for variants that mean the input matrix fails the validity
    /// conditions (as opposed to I/O, parse, or numeric failures).
    pub fn is_invalid_matrix(&self) -> bool {
        matches!(
            self,
            Error::NonPositiveEntry { .. }
                | Error::DominanceViolated { .. }
                | Error::NotSymmetric { .. }
                | Error::OrderTooSmall { .. }
        )
    }
}
