use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LejaError {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("index must be at least 1 (indices are 1-based)")]
    ZeroIndex,

    #[error("integer overflow computing binom({n}, {k})")]
    Overflow { n: u64, k: u64 },

    #[error("component {component} has {available} points but {required} are required")]
    ComponentTooShort {
        component: usize,
        available: usize,
        required: usize,
    },

    #[error("every candidate coincides with an existing node")]
    DegenerateCandidates,

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("nodes {first} and {second} of axis {axis} coincide")]
    CoincidentNodes {
        axis: usize,
        first: usize,
        second: usize,
    },

    #[error("({p}, {q}) is not a node index of the interpolation set with N = {n}")]
    NotANode { p: usize, q: usize, n: usize },

    #[error("expected {expected} samples, got {found}")]
    SampleCount { expected: usize, found: usize },

    #[error("singular Vandermonde matrix (node set is not unisolvent)")]
    Singular,

    #[error("invalid compact: {0}")]
    InvalidCompact(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, LejaError>;

impl From<std::io::Error> for LejaError {
    fn from(e: std::io::Error) -> Self {
        LejaError::Io(e.to_string())
    }
}
