use thiserror::Error;

use crate::verify::Verdict;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A parameter fell outside the range in which a construction applies.
    #[error("{name} = {value} violates {constraint} (here {lo} ≤ {name} ≤ {hi})")]
    OutOfRange {
        name: &'static str,
        value: u64,
        lo: u64,
        hi: u64,
        constraint: String,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// An input failed re-verification; the verdict says why.
    #[error("rejected: {reason} ({verdict})")]
    Rejected { reason: String, verdict: Verdict },

    /// A construction produced an object that its own verifier refused.
    #[error("construction defect: {0}")]
    ConstructionDefect(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
