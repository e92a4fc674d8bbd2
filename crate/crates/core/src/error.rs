use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported root system {0}{1}")]
    Unsupported(char, usize),
    #[error("node {0} is not a node of this diagram")]
    UnknownNode(usize),
    #[error("operation requires a non-simply-laced type")]
    SimplyLaced,
    #[error("path is not integral")]
    NonIntegral,
    #[error("node cap {0} exceeded")]
    CapExceeded(usize),
    #[error("iteration cap exceeded in {0}")]
    IterationCap(&'static str),
    #[error("normalization failure: {0}")]
    Normalization(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("negative coefficient while peeling: {0}")]
    NegativeCoefficient(String),
    #[error("identity check failed: {0}")]
    Identity(String),
}

pub type Result<T> = std::result::Result<T, Error>;
