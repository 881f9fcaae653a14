use alloc::string::String;

/// Everything that can go wrong in the core library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid scene: {0}")]
    InvalidScene(String),
    #[error("empty label set")]
    EmptyLabelSet,
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("vertex index {0} is outside the universe")]
    UnknownVertex(usize),
    #[error("direction vector is zero")]
    ZeroDirection,
    #[error("direction has dimension {found}, scene has dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("empty family")]
    EmptyFamily,
    #[error("order is not a permutation of the vertex set")]
    NotAPermutation,
    #[error("blocks do not partition the vertex set")]
    NotAPartition,
    #[error("order is not realized by any direction")]
    Unrealizable,
    #[error("orders are over different vertex sets")]
    MismatchedUniverse,
    #[error("{what}: {actual} exceeds the cap of {limit}")]
    CapExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },
    #[error("no repetition within {0} iterations")]
    MaxIterExceeded(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
