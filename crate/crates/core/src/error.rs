use thiserror::Error;

use crate::optable::OperatorKind;

/// Errors raised by universe, partition, table and decomposition operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("universe must have between 1 and {max} elements, got {got}")]
    UniverseSize { got: usize, max: usize },
    #[error("empty element label")]
    EmptyLabel,
    #[error("invalid element label {0:?}: labels may not contain ',' '|' or whitespace")]
    InvalidLabel(String),
    #[error("duplicate element label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown element label {0:?}")]
    UnknownLabel(String),
    #[error("element {0:?} appears in more than one block")]
    Overlap(String),
    #[error("element {0:?} is not covered by any block")]
    Coverage(String),
    #[error("partition contains an empty block")]
    EmptyBlock,
    #[error("operands belong to different universes")]
    UniverseMismatch,
    #[error("expected a non-empty list of partitions")]
    EmptyList,
    #[error("block index {index} is invalid for a partition with {count} blocks")]
    BadBlockIndex { index: usize, count: usize },
    #[error("expected an operator table of kind {expected}, got {found}")]
    KindMismatch {
        expected: OperatorKind,
        found: OperatorKind,
    },
    #[error("set is not an output value of the table")]
    NotAnOutput,
    #[error("universe of size {n} exceeds the limit of {max} for this operation")]
    TooLarge { n: usize, max: usize },
    #[error("the identity relation is outside the domain of the independence relation")]
    IdentityNotInDomain,
    #[error("malformed operator table: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
