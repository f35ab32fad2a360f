use std::process::ExitCode;

/// Failures surfaced by the command line, grouped by exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{context}: {message}")]
    Invalid { context: String, message: String },
    #[error("unknown {kind} `{name}`")]
    UnknownName { kind: &'static str, name: String },
    #[error("{0}")]
    Budget(String),
}

impl CliError {
    pub fn invalid(context: impl Into<String>, message: impl ToString) -> CliError {
        CliError::Invalid {
            context: context.into(),
            message: message.to_string(),
        }
    }

    /// Wraps a core error, keeping budget overruns distinct.
    pub fn core(context: impl Into<String>, err: declat_core::Error) -> CliError {
        match err {
            declat_core::Error::BudgetExceeded(msg) => CliError::Budget(format!("{}: {msg}", context.into())),
            other => CliError::invalid(context, other),
        }
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Usage(_) | CliError::Io { .. } => 1,
            CliError::Syntax { .. } | CliError::Invalid { .. } | CliError::UnknownName { .. } => 2,
            CliError::Budget(_) => 3,
        })
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}
