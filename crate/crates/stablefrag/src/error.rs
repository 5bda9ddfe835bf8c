use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("alpha must lie strictly inside (1, 2): got {0}")]
    AlphaOutOfRange(f64),

    #[error("invalid offspring law: {0}")]
    InvalidLaw(String),

    #[error("conditioning too rare: no accepted sample for law {law}, n = {n} after {attempts} attempts")]
    ConditioningTooRare {
        law: String,
        n: usize,
        attempts: u64,
    },

    #[error("conditioning impossible: law {law} has support period {period}, which never yields total size {n}")]
    ConditioningImpossible {
        law: String,
        n: usize,
        period: u64,
    },

    #[error("invalid coding path: {0}")]
    InvalidPath(String),

    #[error("edge weights must be distinct")]
    DuplicateWeights,

    #[error("weight count {got} does not match tree with {expected} edges")]
    WeightCountMismatch { got: usize, expected: usize },

    #[error("threshold must lie in [0, 1]: got {0}")]
    ThresholdOutOfRange(f64),

    #[error("time must be nonnegative: got {0}")]
    NegativeTime(f64),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("sizes sum to {got}, expected {expected}")]
    SizeSumMismatch { got: usize, expected: usize },

    #[error("masses must be positive and sum to at most one: {0}")]
    InvalidMasses(String),

    #[error("empty sample passed to a statistic")]
    EmptySample,

    #[error("exact enumeration is limited to n <= {max}: got {n}")]
    EnumerationTooLarge { n: usize, max: usize },

    #[error("quadrature did not converge: {0}")]
    QuadratureNonConvergence(String),

    #[error("grid resolution must be positive")]
    EmptyGrid,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
