use std::path::PathBuf;

use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot normalize state: {0}")]
    Normalization(String),
    #[error("invalid amplitude at index {index}: {re} + {im}i")]
    InvalidAmplitude { index: usize, re: f64, im: f64 },
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimMismatch { expected: usize, found: usize },
    #[error("operator is not Hermitian (max deviation {deviation:e})")]
    Hermiticity { deviation: f64 },
    #[error("decision problem has no actions")]
    EmptyActionSet,
    #[error("budget constraint violated: q0*a + b = {spent}, wealth {wealth}")]
    Budget { spent: f64, wealth: f64 },
    #[error("mind state is orthogonal to the state (|c|^2 = {overlap_sq:e})")]
    OrthogonalMind { overlap_sq: f64 },
    #[error("parameter out of domain: {0}")]
    Domain(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema error: {0}")]
    Schema(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::Schema(_) => 2,
            Error::Io { .. } => 4,
            _ => 3,
        }
    }

    pub(crate) fn dims(expected: usize, found: usize) -> Self {
        Error::DimMismatch { expected, found }
    }
}
