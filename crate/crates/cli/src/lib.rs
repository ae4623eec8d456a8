//! Command line front end: model specifications, curvature file ingestion
//! and the `catalog`, `verify`, `classify` and `weyl-demo` commands.
//!
//! Exit codes are 0 on success, 1 when a check fails or a report is
//! inconsistent and 2 for input or validation errors.

pub mod commands;
pub mod curvature_file;
pub mod format;
pub mod model;

use std::fmt;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// Input or validation problem; maps to exit code 2.
#[derive(Debug, Clone, PartialEq)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

impl From<killform_core::Error> for InputError {
    fn from(e: killform_core::Error) -> Self {
        InputError(e.to_string())
    }
}

/// Text produced by a command and the exit code it asks for.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub text: String,
    pub code: i32,
    /// Diagnostic for standard error.
    pub message: Option<String>,
}
