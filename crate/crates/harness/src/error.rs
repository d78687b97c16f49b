use knsub_core::AlgebraError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("malformed catalog: {0}")]
    Catalog(String),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("unknown property {0:?}")]
    UnknownProperty(String),
    #[error("module {origin} has {size} elements, above the cap of {cap}")]
    CapExceeded { origin: String, size: usize, cap: usize },
    #[error("bad bound: {0}")]
    BadBound(String),
}

pub type Result<T> = std::result::Result<T, HarnessError>;
