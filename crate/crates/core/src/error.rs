use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The input does not have the expected layout (for example a wrong CSV header).
    #[error("format error: {0}")]
    Format(String),

    /// A single data row could not be interpreted.
    #[error("line {line}: {message}")]
    Row { line: u64, message: String },

    #[error("input contains no valid data rows")]
    EmptyInput,

    #[error("insufficient data: need at least {required} values, got {actual}")]
    InsufficientData { required: usize, actual: usize },

    #[error("zero reference price at position {index}; return is undefined")]
    DivisionDomain { index: usize },

    /// Zero spread: every downstream formula divides by the sample scale.
    #[error("degenerate sample: {0}")]
    Degenerate(String),

    /// Argument or parameter outside its mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),
}

/// Coarse classification used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Data,
    Computation,
    InvalidArgument,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Format(_) | Error::Row { .. } | Error::EmptyInput | Error::InsufficientData { .. } => {
                ErrorKind::Data
            }
            Error::DivisionDomain { .. } | Error::Degenerate(_) => ErrorKind::Computation,
            Error::Domain(_) => ErrorKind::InvalidArgument,
        }
    }

    pub(crate) fn insufficient(required: usize, actual: usize) -> Self {
        Error::InsufficientData { required, actual }
    }
}
