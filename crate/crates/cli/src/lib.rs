//! Command-line front end: argument parsing, job execution, rendering and
//! the acceptance checks behind `validate`.

pub mod cli;
pub mod commands;
pub mod config;
pub mod criteria;
pub mod error;
pub mod output;
