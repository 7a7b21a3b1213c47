use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] aw_forge::Error),

    #[error("{0}")]
    Usage(String),

    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },

    #[error("cannot write to stdout: {0}")]
    Stdout(std::io::Error),

    #[error("cannot serialize report: {0}")]
    Json(#[from] serde_json::Error),
}

pub type CliResult<T> = std::result::Result<T, CliError>;

impl CliError {
    /// `1` for mathematical failures, `2` for usage and precondition errors.
    pub fn exit_code(&self) -> u8 {
        use aw_forge::Error as E;
        match self {
            CliError::Core(E::ConvergenceFailure | E::NotTridiagonal { .. } | E::NonUnitSuperdiagonal { .. }) => 1,
            _ => 2,
        }
    }

    /// Stable machine-readable name of the error.
    pub fn kind(&self) -> String {
        match self {
            // The variant name, e.g. "DenominatorVanishes".
            CliError::Core(e) => format!("{e:?}").chars().take_while(char::is_ascii_alphanumeric).collect(),
            CliError::Usage(_) => "Usage".into(),
            CliError::Write { .. } | CliError::Stdout(_) => "Io".into(),
            CliError::Json(_) => "Serialization".into(),
        }
    }
}
