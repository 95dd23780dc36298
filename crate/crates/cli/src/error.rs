use thiserror::Error;

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Ok = 0,
    VerificationFailed = 1,
    Usage = 2,
    NotConverged = 3,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Field(String),
    #[error(transparent)]
    Library(#[from] alphaconvex::Error),
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    /// Exit status of a command that failed before producing results.
    pub fn status(&self) -> ExitStatus {
        ExitStatus::Usage
    }
}
