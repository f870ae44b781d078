use std::fmt;

/// Where a parse error or reference occurs: a file position or a command argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Location {
    pub source: String,
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.source, self.line, self.column)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{at}: parse error: {message}")]
    Parse { at: Location, message: String },
    #[error("{at}: unknown reference `{name}`")]
    UnknownReference { at: Location, name: String },
    #[error("{context}: order cap of {cap} exceeded")]
    OrderCapExceeded { context: String, cap: usize },
    #[error("usage error: {0}")]
    Usage(String),
    #[error("{context}: {source}")]
    Library {
        context: String,
        #[source]
        source: fundament_core::Error,
    },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// Stable kind name used in JSON error documents.
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Parse { .. } => "ParseError",
            CliError::UnknownReference { .. } => "UnknownReference",
            CliError::OrderCapExceeded { .. } => "OrderCapExceeded",
            CliError::Usage(_) => "UsageError",
            CliError::Library { .. } => "LibraryError",
            CliError::Io { .. } => "IoError",
        }
    }

    pub fn parse(at: Location, message: impl Into<String>) -> Self {
        CliError::Parse { at, message: message.into() }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;

/// Attaches context to a library result; cap overruns keep their own kind.
pub trait Context<T> {
    fn context(self, context: impl FnOnce() -> String) -> Result<T>;
}

impl<T> Context<T> for fundament_core::Result<T> {
    fn context(self, context: impl FnOnce() -> String) -> Result<T> {
        self.map_err(|source| match source {
            fundament_core::Error::OrderCapExceeded { cap } => CliError::OrderCapExceeded { context: context(), cap },
            source => CliError::Library { context: context(), source },
        })
    }
}
