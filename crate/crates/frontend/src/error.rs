use thiserror::Error;

/// Everything the frontend can fail with. Each variant maps to a process exit
/// code through [`FrontendError::exit_code`].
#[derive(Debug, Error)]
pub enum FrontendError {
    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Engine(#[from] varcomplex_core::Error),
    #[error("resource bound exceeded: {0}")]
    Resource(String),
}

impl FrontendError {
    pub fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        FrontendError::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            FrontendError::Resource(_) => 3,
            _ => 2,
        }
    }

    /// Moves a position reported relative to an expression onto the line and
    /// column of the enclosing scenario file.
    pub fn at_line(self, line: usize, column_offset: usize) -> Self {
        match self {
            FrontendError::Parse { column, message, .. } => FrontendError::Parse {
                line,
                column: column + column_offset,
                message,
            },
            FrontendError::Engine(e) => FrontendError::Parse {
                line,
                column: column_offset + 1,
                message: e.to_string(),
            },
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, FrontendError>;
