//! Host-side companion to `ekron-core`: text formats, threaded drivers and
//! the `ekron` command-line tool.

// `!(x > a)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod formats;
pub mod parallel;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags or inconsistent configuration.
    #[error("{0}")]
    Validation(String),
    /// Missing or malformed input data, or a failed computation.
    #[error("{0}")]
    Data(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Data(_) => 3,
        }
    }
}

/// Exit status when a cross-route check fails.
pub const EXIT_CHECK_FAILED: i32 = 4;
