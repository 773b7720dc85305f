use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown state id {0}")]
    UnknownState(u32),
    #[error("action {action} out of range (action count {count})")]
    ActionOutOfRange { action: u32, count: usize },
    #[error("no path to goal")]
    NoPath,
    #[error("goal state has no observations")]
    Unreachable,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("matrix is not column-stochastic: column {column} sums to {sum}")]
    NotStochastic { column: usize, sum: f64 },
    #[error("transform is rank deficient (condition estimate {0:e})")]
    RankDeficient(f64),
    #[error("degenerate data: {0}")]
    Degenerate(String),
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("{path}: {source}")]
    File { path: std::path::PathBuf, source: Box<Error> },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn at(self, path: &std::path::Path) -> Self {
        Error::File { path: path.to_path_buf(), source: Box::new(self) }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
