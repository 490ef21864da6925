use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("validation error at {location}: {source}")]
    Validation {
        location: String,
        #[source]
        source: mixdiv_core::Error,
    },
    #[error("invalid job: {0}")]
    Job(String),
    #[error(transparent)]
    Core(#[from] mixdiv_core::Error),
}

impl CliError {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Parse { location: location.into(), message: message.into() }
    }

    pub(crate) fn validation(location: impl Into<String>, source: mixdiv_core::Error) -> Self {
        CliError::Validation { location: location.into(), source }
    }
}
