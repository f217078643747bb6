use std::path::PathBuf;

use thiserror::Error;

/// Process exit codes. Stable across releases.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    Usage = 2,
    Input = 3,
    Domain = 4,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),

    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error at `{path}` (line {line}, column {column}): {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("validation error at `{path}`: {message}")]
    Validation { path: String, message: String },

    #[error("{context}: {source}")]
    Domain {
        context: String,
        #[source]
        source: siccost_core::Error,
    },
}

impl CliError {
    pub fn exit_status(&self) -> ExitStatus {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => ExitStatus::Usage,
            CliError::Parse { .. } | CliError::Validation { .. } => ExitStatus::Input,
            CliError::Domain { .. } => ExitStatus::Domain,
        }
    }

    pub(crate) fn validation(path: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Validation {
            path: path.into(),
            message: message.into(),
        }
    }

    /// Attaches a field-path prefix to a core invariant violation.
    pub(crate) fn from_invalid(prefix: &str, err: siccost_core::Error) -> Self {
        match &err {
            siccost_core::Error::InvalidParameter { field, .. } => {
                CliError::validation(join_path(prefix, field), err.to_string())
            }
            _ => CliError::validation(prefix.to_string(), err.to_string()),
        }
    }

    pub(crate) fn domain(context: impl Into<String>, source: siccost_core::Error) -> Self {
        CliError::Domain {
            context: context.into(),
            source,
        }
    }
}

pub(crate) fn join_path(prefix: &str, field: &str) -> String {
    if prefix.is_empty() {
        field.to_string()
    } else {
        format!("{prefix}.{field}")
    }
}
