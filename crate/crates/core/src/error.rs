use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid space: {0}")]
    InvalidSpace(String),

    #[error("invalid point: {0}")]
    InvalidPoint(String),

    #[error("{value} not in dist({space})")]
    InvalidDistance { value: usize, space: String },

    #[error("invalid distance set: {0}")]
    InvalidDistanceSet(String),

    #[error("size limit exceeded: {what} has {size} elements, limit is {limit}")]
    SizeLimit {
        what: String,
        size: String,
        limit: usize,
    },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("map is not injective: vertices {0} and {1} share image {2}")]
    NotInjective(usize, usize, usize),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("no preimage: {0}")]
    NoPreimage(String),
}

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }
}
