use std::fmt;

use gz_core::{ErrorClass, GzError};
use serde_json::{json, Value};

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    /// Malformed input: unreadable files, bad JSON, inconsistent dimensions, bad flags.
    pub const INPUT: i32 = 1;
    /// Well-formed input outside the mathematical domain of the command.
    pub const DOMAIN: i32 = 2;
    /// A numerical routine failed, or a selftest property did not hold.
    pub const NUMERICAL: i32 = 3;
}

#[derive(Debug)]
pub enum CliError {
    Io { path: String, message: String },
    Json(String),
    Usage(String),
    Core(GzError),
    SelftestFailed(Vec<u32>),
}

impl From<GzError> for CliError {
    fn from(e: GzError) -> Self {
        CliError::Core(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io { path, message } => write!(f, "{path}: {message}"),
            CliError::Json(m) => write!(f, "invalid JSON input: {m}"),
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::SelftestFailed(ids) => write!(f, "selftest criteria failed: {ids:?}"),
        }
    }
}

impl std::error::Error for CliError {}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Json(_) | CliError::Usage(_) => exit::INPUT,
            CliError::Core(e) => match e.class() {
                ErrorClass::Input => exit::INPUT,
                ErrorClass::Domain => exit::DOMAIN,
                ErrorClass::Numerical => exit::NUMERICAL,
            },
            CliError::SelftestFailed(_) => exit::NUMERICAL,
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "io",
            CliError::Json(_) => "malformed_json",
            CliError::Usage(_) => "usage",
            CliError::Core(e) => e.code(),
            CliError::SelftestFailed(_) => "selftest_failed",
        }
    }

    /// The `{"error": code, "detail": ...}` object printed on failure.
    pub fn to_json(&self) -> Value {
        json!({ "error": self.code(), "detail": self.to_string() })
    }
}

pub type CliResult<T> = Result<T, CliError>;
