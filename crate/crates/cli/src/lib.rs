//! Front end for `accr-core`: JSON manifold definitions, text and JSON reports.

pub mod args;
pub mod commands;
pub mod definition;
pub mod error;
pub mod render;

pub use args::{Cli, Command, Format};
pub use commands::{inspect_model, run, Outcome};
pub use definition::ManifoldDefinition;
pub use error::CliError;

impl Cli {
    pub fn format(&self) -> Format {
        match &self.command {
            Command::Inspect(a) => a.output.format,
            Command::Soliton(a) => a.output.format,
            Command::Sweep(a) => a.output.format,
            Command::Export(_) => Format::Text,
        }
    }
}
