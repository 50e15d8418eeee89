use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KlrError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("weight mismatch: {0}")]
    WeightMismatch(String),
    #[error("index {index} out of range for {strands} strands")]
    IndexOutOfRange { index: usize, strands: usize },
    #[error("not divisible: {0}")]
    Divisibility(String),
    #[error("degree of the zero element is undefined")]
    ZeroElement,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("malformed pairing: {0}")]
    MalformedPairing(String),
}

pub type Result<T> = std::result::Result<T, KlrError>;
