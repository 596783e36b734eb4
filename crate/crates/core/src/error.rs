use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ModelError {
    #[error("skill space needs at least two types, got {0}")]
    TooFewTypes(usize),
    #[error("skill types must be strictly increasing (violated at position {0})")]
    TypesNotIncreasing(usize),
    #[error("{what}: expected length {expected}, got {got}")]
    LengthMismatch {
        what: String,
        expected: usize,
        got: usize,
    },
    #[error("{what}: entry {index} is negative")]
    NegativeEntry { what: String, index: usize },
    #[error("{what}: entry {index} is not positive (full support required)")]
    NotFullSupport { what: String, index: usize },
    #[error("{what}: entries sum to {sum}, not 1")]
    NotNormalized { what: String, sum: String },
    #[error("signal structure: likelihood row for skill type {theta} sums to {sum}, not 1")]
    RowNotStochastic { theta: usize, sum: String },
    #[error("signal structure: signal {0:?} has zero likelihood under every skill type")]
    NullSignal(String),
    #[error("signal structure has no signals")]
    NoSignals,
    #[error("unknown signal {0:?}")]
    UnknownSignal(String),
    #[error("firm has no tasks")]
    EmptyFirm,
    #[error("MLR checks need every signal to carry a distinct real value")]
    UnvaluedSignals,
    #[error("invalid garbling kernel: {0}")]
    InvalidKernel(String),
    #[error("the fine signal structure is not more informative than the coarse one")]
    NotGarblingOrdered,
    #[error("pooling needs two distinct skill types inside the space (got {lo} and {hi})")]
    InvalidPooling { lo: usize, hi: usize },
    #[error("delta must lie in (0, 1], got {0}")]
    DeltaOutOfRange(String),
    #[error("eps must be non-negative, got {0}")]
    NegativeEps(String),
    #[error("objects live on skill spaces of different sizes ({0} vs {1})")]
    SpaceMismatch(usize, usize),
}

pub type Result<T, E = ModelError> = std::result::Result<T, E>;
