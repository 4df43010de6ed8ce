use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension must be positive")]
    EmptyDimension,

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("state is not normalized (norm² = {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },

    #[error("operator is not hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("operator is not unitary (max deviation {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("invalid density operator: {0}")]
    InvalidDensity(String),

    #[error("invalid mixture: {0}")]
    InvalidMixture(String),

    #[error("factorization {dims:?} does not multiply to dimension {dim}")]
    BadFactorization { dims: Vec<usize>, dim: usize },

    #[error("partial trace needs at least two subsystems, found {0}")]
    NotComposite(usize),

    #[error("subsystem index {index} out of range for {count} subsystems")]
    SubsystemIndex { index: usize, count: usize },

    #[error("operator is not local to subsystems {0}")]
    NotLocal(&'static str),

    #[error("embedded unitaries do not commute (max deviation {deviation:e})")]
    NonCommuting { deviation: f64 },

    #[error("conditioning on an event of probability {0}")]
    ZeroMarginal(f64),

    #[error("joint probability {joint} exceeds marginal {marginal}")]
    JointExceedsMarginal { joint: f64, marginal: f64 },

    #[error("correlation {0} outside [-1, 1]")]
    CorrelationRange(f64),

    #[error("invalid direction: {0}")]
    InvalidDirection(String),

    #[error("detected mode {0} has zero probability")]
    UndetectableMode(String),

    #[error("line {line}: {message}")]
    ExperimentFile { line: usize, message: String },

    #[error("sample count must be positive")]
    ZeroSamples,
}
