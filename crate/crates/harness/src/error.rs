use std::path::PathBuf;

use convertor_core::Error as CoreError;

/// Errors surfaced by the harness and the CLI.
#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("cannot read or write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("property failure: {0}")]
    PropertyFailure(String),
}

impl From<serde_json::Error> for HarnessError {
    fn from(e: serde_json::Error) -> Self {
        HarnessError::Parse(e.to_string())
    }
}

impl HarnessError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        HarnessError::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit status: 2 parse, 3 cap, 4 max_iter, 5 property failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Io { .. } => 1,
            HarnessError::Parse(_) | HarnessError::InvalidConfig(_) => 2,
            HarnessError::Core(CoreError::CapExceeded { .. }) => 3,
            HarnessError::Core(CoreError::MaxIterExceeded(_)) => 4,
            HarnessError::Core(_) => 2,
            HarnessError::PropertyFailure(_) => 5,
        }
    }

    /// Short machine-readable category.
    pub fn kind(&self) -> &'static str {
        match self {
            HarnessError::Io { .. } => "io",
            HarnessError::Parse(_) | HarnessError::Core(_) => match self.exit_code() {
                3 => "cap",
                4 => "max_iter",
                _ => "parse",
            },
            HarnessError::InvalidConfig(_) => "config",
            HarnessError::PropertyFailure(_) => "property",
        }
    }
}

pub type Result<T, E = HarnessError> = std::result::Result<T, E>;
