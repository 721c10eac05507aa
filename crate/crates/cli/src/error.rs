use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("parse error at {pos}: {message}")]
    Parse { pos: usize, message: String },
    #[error("unknown atom `{name}` at {pos}")]
    UnknownAtom { pos: usize, name: String },
    #[error("{0}")]
    Core(#[from] ltoral::Error),
    #[error("io error on {path}: {message}")]
    Io { path: String, message: String },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("invalid arguments: {0}")]
    Args(String),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Parse { .. } => "ParseError",
            CliError::UnknownAtom { .. } => "UnknownAtom",
            CliError::Core(e) => core_kind(e),
            CliError::Io { .. } => "IoError",
            CliError::Config(_) => "ConfigError",
            CliError::Args(_) => "ArgumentError",
        }
    }

    pub fn record(&self) -> ErrorRecord {
        ErrorRecord {
            engine_version: ltoral::ENGINE_VERSION.to_string(),
            error: self.kind().to_string(),
            message: self.to_string(),
            position: match self {
                CliError::Parse { pos, .. } | CliError::UnknownAtom { pos, .. } => Some(*pos),
                _ => None,
            },
        }
    }
}

fn core_kind(e: &ltoral::Error) -> &'static str {
    use ltoral::Error::*;
    match e {
        BudgetExceeded { .. } => "BudgetExceeded",
        MalformedSpec(_) => "MalformedSpec",
        ElementNotInGroup => "ElementNotInGroup",
        NonMatchingTargets => "NonMatchingTargets",
        NonSurjective => "NonSurjective",
        NoSuchQuotient { .. } => "NoSuchQuotient",
        NotNormal => "NotNormal",
        NotAbelian => "NotAbelian",
        UnsupportedValuation { .. } => "UnsupportedValuation",
        HypothesisFailed(_) => "HypothesisFailed",
        UnknownName(_) => "UnknownName",
        BadPrime(_) => "BadPrime",
        LevelTooSmall { .. } => "LevelTooSmall",
        TableFailed(_) => "TableFailed",
    }
}

/// Machine-readable form of an error, emitted in place of a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ErrorRecord {
    pub engine_version: String,
    pub error: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub position: Option<usize>,
}

pub type Result<T> = std::result::Result<T, CliError>;
