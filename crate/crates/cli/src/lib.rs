//! Text workspaces, argument expressions and the commands of the `fundament` binary.

pub mod commands;
pub mod error;
pub mod expr;
pub mod json;
mod lex;
pub mod workspace;

pub use commands::{run, Cli, Command, Report, SCHEMA};
pub use error::{CliError, Location};
pub use workspace::{Object, Workspace};
