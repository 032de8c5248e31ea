use std::fmt;

use crate::decomposition::SingularReport;
use crate::symbols::Grading;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected n = {expected}, found n = {found}")]
    Dimension { expected: usize, found: usize },

    #[error("point has {found} coordinates, expected {expected}")]
    PointLength { expected: usize, found: usize },

    #[error("variable index {index} out of range (polynomials in n = {n} have {count} variables)")]
    VariableIndex { index: usize, n: usize, count: usize },

    #[error("n must be at least 1")]
    ZeroDimension,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("symbol is not fiber-homogeneous (fiber degrees {0:?})")]
    NotHomogeneous(Vec<u32>),

    #[error("fiber degree of the zero symbol is undetermined")]
    UndeterminedDegree,

    #[error("expected a symbol in {expected} grading, found {found}")]
    Grading { expected: Grading, found: Grading },

    #[error("weight mismatch: {left} vs {right}")]
    WeightMismatch { left: String, right: String },

    #[error("incompatible operators: {0}")]
    IncompatibleOperators(String),

    #[error("singular weight: {0}")]
    SingularWeight(SingularReport),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error at {0}")]
    Parse(ParseError),
}

/// Location-tagged parse failure from the symbol file reader.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::Parse(e)
    }
}
