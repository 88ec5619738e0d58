use std::io;

use thiserror::Error;

/// Errors produced by the codec, cipher, container and benchmark layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot seed generator from empty key material")]
    Seed,

    #[error("value out of range: {0}")]
    Range(String),

    /// A symbol triple whose column digit disagrees with its depth symbol.
    /// Also raised when decrypted padding is nonzero, which almost always
    /// means the wrong key was used.
    #[error("integrity check failed: {0}")]
    Integrity(String),

    #[error("length mismatch: expected {expected}, got {actual}")]
    Length { expected: usize, actual: usize },

    #[error("malformed container: {0}")]
    Format(String),

    #[error("bad key file: {0}")]
    KeyFormat(String),

    #[error("usage: {0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn length(expected: usize, actual: usize) -> Self {
        Error::Length { expected, actual }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
