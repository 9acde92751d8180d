use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("requested length {requested} exceeds the configured cap {cap}")]
    CapExceeded { requested: u64, cap: u64 },

    /// A closed form disagreed with a scan, or a lemma-backed invariant failed.
    /// Always indicates a bug in the generator or the formulas.
    #[error("internal consistency violation: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
