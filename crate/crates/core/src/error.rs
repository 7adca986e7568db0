use alloc::string::String;

pub type Result<T, E = CoreError> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CoreError {
    #[error("non-finite value encountered: {0}")]
    NonFinite(f64),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid activation: {0}")]
    InvalidActivation(&'static str),

    #[error("invalid network: {0}")]
    InvalidNetwork(String),

    #[error("weight vector has length {found}, network needs {expected}")]
    WeightCount { expected: usize, found: usize },

    #[error("invalid parameter for baseline class: {0}")]
    Parameter(String),

    #[error("{what} = {value} exceeds cap {cap}")]
    CapExceeded { what: &'static str, value: usize, cap: usize },

    #[error("point set is degenerate: {0}")]
    Degenerate(String),

    #[error("{0} labeling(s) have a separation margin too close to zero to decide")]
    Indeterminate(usize),

    #[error("operation not supported for this class: {0}")]
    Unsupported(&'static str),

    #[error("density fit needs at least 3 usable samples spanning a factor of 4: {0}")]
    InsufficientSamples(String),

    #[error("value outside its domain: {0}")]
    Domain(String),

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("empty sample")]
    EmptySample,

    #[error("invalid distribution: {0}")]
    Distribution(String),
}
