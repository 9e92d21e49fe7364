use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("Schur functor {weight:?} is undefined on a bundle of rank {rank}")]
    UndefinedFunctor { weight: Vec<i64>, rank: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("{atom} is not a bundle on {variety}")]
    AtomMismatch { atom: String, variety: String },
    #[error("Chow classes live on different varieties")]
    RingMismatch,
    #[error(
        "no quasi-polynomial of period <= {max_period} and degree <= {degree} fits the samples"
    )]
    FitFailure { max_period: u64, degree: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;
