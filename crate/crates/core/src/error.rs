use thiserror::Error;

/// Errors raised by the combinatorial and exact-arithmetic layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size {n} exceeds the configured limit {max}")]
    SizeLimit { n: usize, max: usize },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("element {p} is outside the ground set 1..={n}")]
    OutOfRange { p: usize, n: usize },

    #[error("block {0:?} mixes parities")]
    NotParitySeparated(Vec<usize>),

    #[error("outside the domain of the map: {0}")]
    Domain(String),

    #[error("truncation orders differ ({left} vs {right})")]
    OrderMismatch { left: usize, right: usize },

    #[error("matrix dimensions differ ({left} vs {right})")]
    DimensionMismatch { left: usize, right: usize },

    #[error("singular: {0}")]
    Singular(String),

    #[error("variable not invertible (phi(X)=0)")]
    NotInvertible,

    #[error("missing value for {0}")]
    MissingValue(String),

    #[error("unknown variable label '{0}'")]
    UnknownLabel(char),

    #[error("unsupported case: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
