use serde::Serialize;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CliError {
    #[error("config key {key}: {reason}")]
    Config { key: String, reason: String },

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Compute(#[from] quadspec::Error),

    #[error("{0}")]
    Io(String),

    /// The run completed but at least one check failed.
    #[error("{0}")]
    Failed(String),
}

#[derive(Serialize)]
struct ErrorRecord<'a> {
    status: &'static str,
    kind: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    key: Option<&'a str>,
    message: String,
    exit_code: i32,
}

impl CliError {
    pub fn config(key: impl Into<String>, reason: impl Into<String>) -> Self {
        CliError::Config { key: key.into(), reason: reason.into() }
    }

    /// 2 for bad input, 1 for failed computations.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config { .. } | CliError::Usage(_) => 2,
            CliError::Compute(_) | CliError::Io(_) | CliError::Failed(_) => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Config { .. } => "ConfigError",
            CliError::Usage(_) => "UsageError",
            CliError::Compute(e) => e.kind(),
            CliError::Io(_) => "IoError",
            CliError::Failed(_) => "VerificationFailed",
        }
    }

    /// One-line JSON for stderr.
    pub fn record(&self) -> String {
        let (key, message) = match self {
            CliError::Config { key, reason } => (Some(key.as_str()), reason.clone()),
            other => (None, other.to_string()),
        };
        let rec = ErrorRecord { status: "error", kind: self.kind(), key, message, exit_code: self.exit_code() };
        serde_json::to_string(&rec).expect("error record serializes")
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
