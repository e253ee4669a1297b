use core::fmt;

/// Errors raised by the numerical kernels and constructions.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An operation that needs a square matrix received `rows x cols`.
    NotSquare { rows: usize, cols: usize },
    /// Two operands had incompatible shapes.
    ShapeMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    /// Entry buffer length does not match `rows * cols`.
    BadEntryCount { expected: usize, found: usize },
    /// A matrix entry or parameter was NaN or infinite.
    NonFinite,
    /// `‖A − A*‖₂` exceeded the Hermitian tolerance.
    NotHermitian { defect: f64 },
    /// Jacobi sweeps did not reduce the off-diagonal mass below tolerance.
    NoConvergence { sweeps: usize, off_diagonal: f64 },
    /// A parameter was outside its admissible range.
    InvalidParameter(&'static str),
    /// Variable index exceeds the declared number of variables.
    VariableOutOfRange { index: usize, num_vars: usize },
    /// Number of matrices does not match the number of variables.
    ArityMismatch { expected: usize, found: usize },
    /// Pairing does not partition `{1, …, d}` into ordered pairs.
    MalformedPairing,
    /// Not enough positive survival bins to fit the tail.
    InsufficientTailData { positive_bins: usize },
    /// Tail regression produced a non-positive rate or had no spread.
    DegenerateFit,
    Parse(crate::ParseError),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotSquare { rows, cols } => write!(f, "expected a square matrix, got {rows}x{cols}"),
            Error::ShapeMismatch { expected, found } => write!(
                f,
                "shape mismatch: expected {}x{}, found {}x{}",
                expected.0, expected.1, found.0, found.1
            ),
            Error::BadEntryCount { expected, found } => {
                write!(f, "expected {expected} entries, found {found}")
            }
            Error::NonFinite => f.write_str("non-finite value"),
            Error::NotHermitian { defect } => {
                write!(f, "matrix is not Hermitian (relative defect {defect:e})")
            }
            Error::NoConvergence { sweeps, off_diagonal } => write!(
                f,
                "eigenvalue iteration did not converge after {sweeps} sweeps (off-diagonal mass {off_diagonal:e})"
            ),
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
            Error::VariableOutOfRange { index, num_vars } => {
                write!(f, "variable x{index} out of range for m = {num_vars}")
            }
            Error::ArityMismatch { expected, found } => {
                write!(f, "expected {expected} matrices, found {found}")
            }
            Error::MalformedPairing => f.write_str("malformed pairing"),
            Error::InsufficientTailData { positive_bins } => write!(
                f,
                "need at least 3 grid points with positive survival, found {positive_bins}"
            ),
            Error::DegenerateFit => f.write_str("tail fit is degenerate (non-positive rate or no spread)"),
            Error::Parse(e) => e.fmt(f),
        }
    }
}

impl core::error::Error for Error {}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::Parse(e)
    }
}

/// What went wrong while parsing a polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    EmptyInput,
    UnexpectedChar(char),
    UnexpectedEnd,
    BadNumber,
    BadExponent,
    VariableOutOfRange { index: usize, num_vars: usize },
}

/// Polynomial syntax error with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let at = self.position;
        match &self.kind {
            ParseErrorKind::EmptyInput => f.write_str("empty polynomial"),
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected '{c}' at offset {at}"),
            ParseErrorKind::UnexpectedEnd => write!(f, "unexpected end of input at offset {at}"),
            ParseErrorKind::BadNumber => write!(f, "malformed number at offset {at}"),
            ParseErrorKind::BadExponent => write!(f, "exponent must be a positive integer (offset {at})"),
            ParseErrorKind::VariableOutOfRange { index, num_vars } => {
                write!(f, "variable x{index} at offset {at} exceeds m = {num_vars}")
            }
        }
    }
}

impl core::error::Error for ParseError {}
