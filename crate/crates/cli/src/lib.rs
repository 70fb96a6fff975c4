//! Scenario files, CSV reports and the `coherence` command-line front end
//! for `coherence-core`.

use std::fmt;
use std::path::PathBuf;

pub mod bundled;
pub mod expr;
pub mod report;
pub mod run;
pub mod scenario;
pub mod selftest;

pub use expr::{parse_coefficient_expr, ParseError};
pub use run::{classify_scenario, run_scenario, RunOutcome};
pub use scenario::{parse_scenario, Scenario};

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const PARSE: i32 = 1;
    pub const VERIFICATION_FAILED: i32 = 2;
    pub const NUMERIC: i32 = 3;
}

#[derive(Debug)]
pub enum CliError {
    /// Malformed scenario text; `line` is 1-based, `column` a byte offset within it.
    Parse { line: usize, column: usize, message: String },
    /// Well-formed but inconsistent scenario.
    Validation(String),
    /// Integration or algebra failure while running.
    Numeric(coherence_core::Error),
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Validation(_) | CliError::Io { .. } => exit::PARSE,
            CliError::Numeric(_) => exit::NUMERIC,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse { line, column, message } => write!(f, "line {line}, column {column}: {message}"),
            CliError::Validation(msg) => f.write_str(msg),
            CliError::Numeric(e) => write!(f, "numeric failure: {e}"),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
        }
    }
}

impl std::error::Error for CliError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            CliError::Numeric(e) => Some(e),
            CliError::Io { source, .. } => Some(source),
            _ => None,
        }
    }
}

impl From<coherence_core::Error> for CliError {
    fn from(e: coherence_core::Error) -> Self {
        CliError::Numeric(e)
    }
}
