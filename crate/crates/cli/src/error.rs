use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const USAGE: i32 = 1;
    pub const INVALID_INTERVAL: i32 = 2;
    pub const SINGULAR_DENOMINATOR: i32 = 3;
    pub const PROPERTY_VIOLATION: i32 = 4;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}:{column}: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },

    #[error(transparent)]
    Core(#[from] qtrig_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use qtrig_core::Error as E;
        match self {
            CliError::Core(E::MalformedInterval { .. } | E::SingularInterval { .. }) => exit::INVALID_INTERVAL,
            CliError::Core(E::SingularDenominator { .. }) => exit::SINGULAR_DENOMINATOR,
            _ => exit::USAGE,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
