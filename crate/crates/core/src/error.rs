use thiserror::Error;

use crate::scheme::ComponentId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid component decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("component {0} is out of range for decomposition {1}")]
    ComponentOutOfRange(ComponentId, String),
    #[error("invalid index sequence: {0}")]
    InvalidSequence(String),
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),
    #[error("ambient decompositions differ: {0} vs {1}")]
    AmbientMismatch(String, String),
    #[error("series has constant term {0}, expected 1")]
    NotInvertible(String),
    #[error("decomposition {0} is too large for the truncated algebra ({1} monomials)")]
    TooLarge(String, usize),
    #[error("inconsistent longitude data on strands {0}")]
    Inconsistent(String),
    #[error("invalid graph component: {0}")]
    InvalidGraph(String),
}
