use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("numerical domain error: {0}")]
    NumericalDomain(String),

    /// A covariance file did not match the expected schema.
    #[error("schema error in field `{field}`: {message}")]
    Schema { field: String, message: String },

    #[error("grid of {points} points exceeds the limit of {limit}")]
    GridTooLarge { points: u64, limit: u64 },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}
