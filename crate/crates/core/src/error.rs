use crate::prob::Rational;
use thiserror::Error;

/// Validation failures: the input was well-formed but violates a
/// probabilistic contract.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("negative entry {value} at row {row}, column {col}")]
    NegativeEntry { row: usize, col: usize, value: Rational },
    #[error("probability mass sums to {sum} (excess {excess})")]
    MassMismatch { sum: Rational, excess: Rational },
    #[error("grid or distribution is empty")]
    EmptyGrid,
    #[error("row {row} has {found} entries, expected {expected}")]
    Ragged { row: usize, expected: usize, found: usize },
    #[error("probability {value} lies outside [0, 1]")]
    ProbOutOfRange { value: Rational },
    #[error("row {row} has zero marginal mass; conditioning on it is undefined")]
    ZeroMarginal { row: usize },
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("alphabet size {size} is below the minimum of 2")]
    AlphabetTooSmall { size: usize },
    #[error("ciphertext {symbol} has zero probability under the model")]
    ImpossibleCiphertext { symbol: usize },
    #[error("grid step {step} is invalid: 1/step must be a positive integer")]
    StepInvalid { step: Rational },
    #[error("enumeration too large: {reason}")]
    TooLarge { reason: String },
}

impl Error {
    /// Stable machine-readable name of the error class.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NegativeEntry { .. } => "NegativeEntry",
            Error::MassMismatch { .. } => "MassMismatch",
            Error::EmptyGrid => "EmptyGrid",
            Error::Ragged { .. } => "Ragged",
            Error::ProbOutOfRange { .. } => "ProbOutOfRange",
            Error::ZeroMarginal { .. } => "ZeroMarginal",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::AlphabetTooSmall { .. } => "AlphabetTooSmall",
            Error::ImpossibleCiphertext { .. } => "ImpossibleCiphertext",
            Error::StepInvalid { .. } => "StepInvalid",
            Error::TooLarge { .. } => "TooLarge",
        }
    }
}

/// Syntax failures while reading numbers, CSV or JSON.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("invalid number {text:?}: {reason}")]
    InvalidNumber { text: String, reason: &'static str },
    #[error("row {row} has {found} cells, expected {expected}")]
    Ragged { row: usize, expected: usize, found: usize },
    #[error("declared shape {declared_rows}x{declared_cols} does not match cells")]
    Shape { declared_rows: usize, declared_cols: usize },
    #[error("csv: {0}")]
    Csv(String),
    #[error("json: {0}")]
    Json(String),
}

impl ParseError {
    pub fn kind(&self) -> &'static str {
        match self {
            ParseError::InvalidNumber { .. } => "InvalidNumber",
            ParseError::Ragged { .. } => "RaggedGrid",
            ParseError::Shape { .. } => "ShapeMismatch",
            ParseError::Csv(_) => "CsvSyntax",
            ParseError::Json(_) => "JsonSyntax",
        }
    }
}

/// Either stage of reading a document can fail.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoadError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Invalid(#[from] Error),
}

impl LoadError {
    pub fn kind(&self) -> &'static str {
        match self {
            LoadError::Parse(e) => e.kind(),
            LoadError::Invalid(e) => e.kind(),
        }
    }
}
