//! JSON and CSV front end for `loopbank`.

pub mod commands;
pub mod doc;
mod error;
pub mod report;

pub use commands::Options;
pub use error::{CliError, CliResult, ErrorObject};
