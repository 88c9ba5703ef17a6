use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("negative polynomial degree {0}")]
    NegativeDegree(i64),

    #[error("angular momentum ell = {ell} exceeds K = {k}")]
    EllExceedsK { ell: usize, k: usize },

    #[error("angle {0} lies outside the open interval (0, pi)")]
    AngleOutOfDomain(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("grid of {got} points is too small (minimum {min})")]
    GridTooSmall { got: usize, min: usize },

    #[error("requested {count} eigenpairs but only {max} are trustworthy on {grid_points} points")]
    TooManyEigenpairs {
        count: usize,
        max: usize,
        grid_points: usize,
    },

    #[error("potential is not finite at interior node chi = {chi}")]
    NonFinitePotential { chi: f64 },

    #[error("eigensolver failed to converge for eigenvalue index {index} after {iterations} iterations")]
    NoConvergence { index: usize, iterations: usize },

    #[error("invalid grid sequence: {0}")]
    InvalidGridSequence(String),

    #[error("rank-deficient least-squares design: {0}")]
    RankDeficient(String),

    #[error("invalid level dataset: {0}")]
    InvalidDataset(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
