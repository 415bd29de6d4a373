use std::path::PathBuf;

use ncho::figures::UnknownFigure;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Validation(#[from] ncho::Error),

    #[error(transparent)]
    UnknownFigure(#[from] UnknownFigure),

    #[error("InvalidConfig: {0}")]
    Config(String),

    #[error("IoError: {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io {
            path: path.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => 3,
            _ => 2,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
