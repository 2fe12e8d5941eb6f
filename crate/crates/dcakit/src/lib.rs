//! File formats and subcommands behind the `dcakit` binary.
// NaN must fail range checks, so `!(x > 0.0)` is deliberate
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod error;
pub mod inline;
pub mod report;
pub mod trace_io;

pub use error::CliError;
