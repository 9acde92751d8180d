use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Core(#[from] pdshift_core::Error),
}

impl CliError {
    /// 2 for formula/oracle disagreements, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(pdshift_core::Error::Consistency(_)) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
