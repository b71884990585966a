use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime below 2^31")]
    InvalidPrime(u32),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("invalid relation: {0}")]
    InvalidRelation(String),
    #[error("ideal not admissible within bound {0}")]
    NotAdmissible(usize),
    #[error("representation does not satisfy relation {0}")]
    RelationViolated(usize),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("decomposition uncertified: {0}")]
    Uncertified(String),
    #[error("undetermined projective dimension, raise caps (explored depth {0})")]
    RaiseCaps(usize),
    #[error("{0} undefined")]
    Undefined(&'static str),
    #[error("Omega rank sequence did not plateau within cap {cap}: ranks {ranks:?}")]
    NoPlateau { cap: usize, ranks: Vec<usize> },
}

pub type Result<T> = std::result::Result<T, Error>;
