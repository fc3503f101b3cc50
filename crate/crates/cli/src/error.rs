//! Error objects and exit codes.

use std::fmt;
use std::process::ExitCode;

use serde_json::json;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    /// Invalid arguments or inputs. Exit 2.
    Usage,
    /// A verification or certification failed. Exit 1.
    Failure,
    /// Reading or writing files. Exit 1.
    Io,
}

#[derive(Debug)]
pub struct CliError {
    pub kind: ErrorKind,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError { kind: ErrorKind::Usage, message: message.into() }
    }

    pub fn failure(message: impl Into<String>) -> Self {
        CliError { kind: ErrorKind::Failure, message: message.into() }
    }

    pub fn io(message: impl Into<String>) -> Self {
        CliError { kind: ErrorKind::Io, message: message.into() }
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self.kind {
            ErrorKind::Usage => 2,
            ErrorKind::Failure | ErrorKind::Io => 1,
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let kind = match self.kind {
            ErrorKind::Usage => "usage",
            ErrorKind::Failure => "failure",
            ErrorKind::Io => "io",
        };
        json!({ "error": { "kind": kind, "message": self.message } })
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::io(e.to_string())
    }
}
