use std::path::PathBuf;

use crate::model::QuantileLimits;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid measurements: {0}")]
    InvalidMeasurements(String),

    #[error("percentile {0} outside [0, 100]")]
    InvalidPercentile(f64),

    #[error("duplicate object id `{0}`")]
    DuplicateId(String),

    #[error("unknown object id `{0}`")]
    UnknownId(String),

    #[error("invalid quantile limits ({lower}, {upper}): need 0 <= lower < upper <= 100")]
    InvalidLimits { lower: f64, upper: f64 },

    #[error("relation is not transitive: {0} < {1} and {1} < {2} but not {0} < {2}")]
    TransitivityViolation(String, String, String),

    #[error("better-than relation contains a cycle through `{0}`")]
    CycleDetected(String),

    #[error("components {0} and {1} are not uniformly ordered across their cross pairs")]
    MixedComponentDirection(usize, usize),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("{n} objects exceed the enumeration bound of {bound}")]
    TooLarge { n: usize, bound: usize },

    #[error("invalid ranking: {0}")]
    InvalidRanking(String),

    #[error("invalid class split: {0}")]
    InvalidSplit(String),

    #[error("no activity sequence for `{0}`")]
    MissingSequence(String),

    #[error("invalid sequence for `{id}`: {reason}")]
    InvalidSequence { id: String, reason: String },

    #[error("at limits {limits}: {source}")]
    AtLimits {
        limits: QuantileLimits,
        #[source]
        source: Box<Error>,
    },

    #[error("{path}: {message}")]
    Input { path: PathBuf, message: String },

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
