use thiserror::Error;

/// Every fallible operation in the crate reports one of these.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("value {value} does not fit in {len} Fibonacci digits")]
    Capacity { value: String, len: usize },

    #[error("move {0} is not applicable")]
    InapplicableMove(String),

    #[error("the all-zero word has no admissible equivalent")]
    ZeroWord,

    #[error("normalization did not terminate within bounds for {0}")]
    Normalization(String),

    #[error("resource bound exceeded: {0}")]
    Resource(String),

    #[error("structural mismatch: {0}")]
    StructuralMismatch(String),

    #[error("partition failure: {0}")]
    PartitionFailure(String),

    #[error("classification error: {0}")]
    Classification(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("cache error: {0}")]
    Cache(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Process exit code for the CLI: 2 invalid input, 3 resource bound,
    /// 1 for anything that amounts to a failed check.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_)
            | Error::Capacity { .. }
            | Error::InapplicableMove(_)
            | Error::ZeroWord
            | Error::Parse(_) => 2,
            Error::Resource(_) => 3,
            Error::Normalization(_)
            | Error::StructuralMismatch(_)
            | Error::PartitionFailure(_)
            | Error::Classification(_)
            | Error::Cache(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
