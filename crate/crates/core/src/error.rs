use thiserror::Error;

use crate::gyro::AxiomReport;
use crate::table::ElementId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed table: {0}")]
    MalformedTable(String),

    #[error("operation is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: ElementId, b: ElementId, c: ElementId },

    #[error("table has no two-sided identity")]
    NoIdentity,

    #[error("element {0} has no two-sided inverse")]
    NoInverse(ElementId),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("size cap exceeded: {what} reached {size} (cap {cap})")]
    CapExceeded { what: &'static str, size: usize, cap: usize },

    #[error("gyration gyr[{0},{1}] is not a bijection")]
    NotBijective(ElementId, ElementId),

    #[error("not a gyrogroup: {}", .0.summary())]
    NotAGyrogroup(Box<AxiomReport>),

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("bad preset parameters: {0}")]
    BadParameters(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("dimension mismatch at line {line}: expected {expected} entries, found {found}")]
    DimensionMismatch { line: usize, expected: usize, found: usize },
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, column, message: message.into() }
    }

    /// Short stable tag used in machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::MalformedTable(_) => "MalformedTable",
            Error::NotAssociative { .. } => "NotAssociative",
            Error::NoIdentity => "NoIdentity",
            Error::NoInverse(_) => "NoInverse",
            Error::InvalidPermutation(_) => "InvalidPermutation",
            Error::CapExceeded { .. } => "CapExceeded",
            Error::NotBijective(..) => "NotBijective",
            Error::NotAGyrogroup(_) => "NotAGyrogroup",
            Error::SizeMismatch(_) => "SizeMismatch",
            Error::HypothesisFailed(_) => "HypothesisFailed",
            Error::PreconditionFailed(_) => "PreconditionFailed",
            Error::BadParameters(_) => "BadParameters",
            Error::Parse { .. } => "ParseError",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
        }
    }
}
