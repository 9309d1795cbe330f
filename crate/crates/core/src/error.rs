use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension mismatch: instance has {expected} spins, configuration has {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// The requested operation exceeds a configured size limit.
    #[error("capacity exceeded: {what} supports n <= {cap}, got n = {n}{hint}")]
    Capacity {
        what: &'static str,
        n: usize,
        cap: usize,
        hint: &'static str,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn capacity(what: &'static str, n: usize, cap: usize) -> Self {
        Error::Capacity {
            what,
            n,
            cap,
            hint: "",
        }
    }

    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
