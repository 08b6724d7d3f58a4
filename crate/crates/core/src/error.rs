use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by table construction, queries and the report writers.
#[derive(Debug, Error)]
pub enum Error {
    /// The requested size is below the minimum or above the configured budget.
    #[error("capacity: {0}")]
    Capacity(String),

    /// A query reached past the end of a precomputed table.
    #[error("argument {value} is outside the table range 0..={limit}")]
    OutOfRange { value: f64, limit: u64 },

    /// The input lies outside the mathematical domain of the function.
    #[error("domain: {0}")]
    Domain(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    /// A transform lost too much accuracy to round integer convolutions.
    #[error("precision failure at n={index}: rounding residue {residue:.3e} >= {threshold}")]
    Precision {
        index: usize,
        residue: f64,
        threshold: f64,
    },

    #[error("{origin}: line {line}: {message}")]
    Ingestion {
        origin: String,
        line: usize,
        message: String,
    },

    #[error("{path}: {err}")]
    Io {
        path: PathBuf,
        #[source]
        err: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, err: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            err,
        }
    }

    /// Process exit status used by the command line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Capacity(_)
            | Error::OutOfRange { .. }
            | Error::Domain(_)
            | Error::Argument(_) => 2,
            Error::Ingestion { .. } => 3,
            Error::Precision { .. } => 4,
            Error::Io { .. } => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
