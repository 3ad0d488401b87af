use thiserror::Error;

/// Errors produced by path construction, metric evaluation, and the
/// regularization pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("time {t} outside path domain [0, {horizon}]")]
    OutOfDomain { t: f64, horizon: f64 },

    #[error("horizon mismatch: {a} vs {b}")]
    HorizonMismatch { a: f64, b: f64 },

    #[error("empty or inverted interval [{a}, {b}]")]
    BadInterval { a: f64, b: f64 },

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("flat-spot ladder overflow: path has {jumps} jumps, supported maximum is {max}")]
    LadderOverflow { jumps: usize, max: usize },

    #[error("unsupported: jump at horizon T={horizon}")]
    JumpAtHorizon { horizon: f64 },

    #[error("infeasible partition: {0}")]
    InfeasiblePartition(String),

    #[error("not converged enough: {0}")]
    NotConverged(String),

    #[error("internal consistency: {0}")]
    Inconsistent(String),

    #[error("stale coupling: {0}")]
    StaleCoupling(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
