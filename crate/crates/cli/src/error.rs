use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const IO: i32 = 1;
    pub const MISMATCH: i32 = 2;
    pub const INVALID: i32 = 3;
    pub const LIMIT: i32 = 4;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("job file, line {line} column {column}: {msg}")]
    Json { line: usize, column: usize, msg: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid job: {0}")]
    Invalid(String),
    #[error(transparent)]
    Core(rees_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => exit::IO,
            CliError::Core(rees_core::Error::ResourceLimit { .. }) => exit::LIMIT,
            _ => exit::INVALID,
        }
    }
}

impl From<rees_core::Error> for CliError {
    fn from(e: rees_core::Error) -> Self {
        CliError::Core(e)
    }
}
