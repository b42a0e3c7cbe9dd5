//! The `wcalc` command-line tool: brackets, Segal-Sugawara vectors, dumps and
//! verification suites over the workspace crates.

mod commands;
mod config;
mod error;
pub mod sample;
pub mod suites;

pub use commands::{bracket, compose_diagrams, dump, ssvec, verify, Output};
pub use config::{Cli, Command, DiagramOp, FamilyArg, Format, Opts, RunConfig, VariantArg};
pub use error::CliError;
pub use suites::{Report, Suite};

/// Runs a parsed command line.
pub fn execute(cli: &Cli) -> Result<Output, CliError> {
    let cfg = RunConfig::from_opts(&cli.opts)?;
    match &cli.command {
        Command::Bracket { i, j } => bracket(&cfg, *i, *j),
        Command::Ssvec { m, variant } => ssvec(&cfg, *m, *variant),
        Command::Verify { suite } => verify(&cfg, *suite),
        Command::Diagram { op: DiagramOp::Compose { bottom, middle, top, x, y } } => {
            compose_diagrams(&cfg, bottom, middle, top, x, y)
        }
        Command::Dump { table } => dump(&cfg, *table),
    }
}
