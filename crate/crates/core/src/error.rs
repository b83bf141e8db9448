use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid record word: {0}")]
    InvalidRecordWord(String),
    #[error("rank r_{index} = {rank} is outside [1, {index}]")]
    InvalidRank { index: usize, rank: u32 },
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("not a path in the record graph: {0}")]
    InvalidPath(String),
    #[error("measure is not normalized: total mass {0}")]
    Normalization(String),
    #[error("enumeration budget exceeded: need {required}, budget {budget}")]
    Budget { required: String, budget: u64 },
    #[error("conditioning on an event of probability zero: {0}")]
    Conditioning(String),
    #[error("invalid alpha sequence: {0}")]
    Alpha(String),
    #[error("order prefix of length {have} does not determine the order of 1..{need}")]
    InsufficientPrefix { have: usize, need: usize },
    #[error("unsupported experiment: {0}")]
    UnsupportedExperiment(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
