use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("partition is not invariant under the group")]
    NotInvariant,
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("group of order {0} is not a p-group")]
    NotPGroup(u128),
    #[error("no block system with blocks of size {0}")]
    NoBlocks(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, GroupError>;
