use thiserror::Error;

/// Errors raised across the retrodiction pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RetroError {
    #[error("invalid precision configuration: {0}")]
    InvalidPrecision(String),
    #[error("square root of a negative value")]
    NegativeRadicand,
    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },
    #[error("point {point} lies outside the domain of {map}")]
    Domain { map: String, point: String },
    #[error("enumeration needs up to {needed} candidates, budget is {budget}")]
    ResourceLimit { needed: u128, budget: u64 },
    #[error("no candidate lies within the matching tolerance of the true value")]
    PrecisionFailure,
    #[error("{0} candidates lie within the matching tolerance of the true value")]
    AmbiguousMatch(usize),
    #[error("candidate set too small for a nearest-neighbour density")]
    DegenerateSet,
    #[error("rank {0} is outside the valid range")]
    InvalidRank(u64),
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("invalid experiment configuration: {0}")]
    InvalidConfig(String),
    #[error("i/o failure: {0}")]
    Io(String),
}

impl From<std::io::Error> for RetroError {
    fn from(err: std::io::Error) -> Self {
        RetroError::Io(err.to_string())
    }
}

impl From<csv::Error> for RetroError {
    fn from(err: csv::Error) -> Self {
        RetroError::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, RetroError>;
