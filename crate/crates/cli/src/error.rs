use std::path::Path;

use pickzeta::Error;
use serde::Serialize;
use thiserror::Error as ThisError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// Error body written to stdout when a command cannot produce a report.
#[derive(Debug, Clone, PartialEq, Serialize, ThisError)]
#[error("{kind}: {message}")]
pub struct CliError {
    pub kind: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub column: Option<usize>,
    #[serde(skip)]
    pub exit_code: i32,
}

impl CliError {
    fn new(kind: &str, message: String, exit_code: i32) -> Self {
        Self {
            kind: kind.into(),
            message,
            path: None,
            line: None,
            column: None,
            exit_code,
        }
    }

    pub fn input(message: impl Into<String>) -> Self {
        Self::new("invalid_input", message.into(), EXIT_INPUT)
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Self::new("usage", message.into(), EXIT_INPUT)
    }

    pub fn io(path: &Path, err: &std::io::Error) -> Self {
        let mut e = Self::new("io", format!("{}: {err}", path.display()), EXIT_INPUT);
        e.path = Some(path.display().to_string());
        e
    }

    pub fn parse(path: &Path, err: &serde_json::Error) -> Self {
        let mut e = Self::new("parse", err.to_string(), EXIT_INPUT);
        e.path = Some(path.display().to_string());
        if err.line() > 0 {
            e.line = Some(err.line());
            e.column = Some(err.column());
        }
        e
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        let (kind, exit) = match &err {
            Error::Domain(_) => ("domain", EXIT_INPUT),
            Error::Dimension(_) => ("dimension", EXIT_INPUT),
            Error::InvalidInput(_) => ("invalid_input", EXIT_INPUT),
            Error::NotHermitian { .. } => ("not_hermitian", EXIT_INPUT),
            Error::Precondition(_) => ("precondition", EXIT_INPUT),
            Error::Overflow { .. } => ("overflow", EXIT_INPUT),
            Error::Degenerate(_) => ("degenerate", EXIT_INPUT),
            Error::Accuracy(_) => ("accuracy", EXIT_FAILED),
            Error::Hypothesis(_) => ("hypothesis", EXIT_FAILED),
            Error::Truncation(_) => ("truncation", EXIT_FAILED),
            Error::IllConditioned(_) => ("ill_conditioned", EXIT_FAILED),
            Error::NotInvertible { .. } => ("not_invertible", EXIT_FAILED),
        };
        Self::new(kind, err.to_string(), exit)
    }
}
