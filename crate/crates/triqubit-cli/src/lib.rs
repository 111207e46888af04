//! Library half of the command-line frontend: file schemas, report bodies,
//! and the subcommand implementations. The binary in `main.rs` only parses
//! arguments and dispatches here.

pub mod commands;
pub mod files;
pub mod report;
