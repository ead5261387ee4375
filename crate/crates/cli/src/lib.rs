//! The `hpref` command line: generate clustering sets, build and cut
//! dendrograms, and measure resampling stability.

pub mod args;
pub mod commands;
pub mod error;

use std::io::Write;

use args::{Cli, Command};
pub use error::{CliError, CliResult};

/// Runs one parsed invocation, writing the human-readable summary to `out`.
pub fn run(cli: &Cli, out: &mut (dyn Write + Send)) -> CliResult<()> {
    let dispatch = |out: &mut dyn Write| match &cli.command {
        Command::Generate(a) => commands::generate(a, out),
        Command::Hpref(a) => commands::hpref(a, out),
        Command::Cut(a) => commands::cut(a, out),
        Command::Stability(a) => commands::stability(a, out),
    };
    match cli.workers {
        None => dispatch(out),
        Some(0) => Err(CliError::usage("--workers must be >= 1")),
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map_err(|e| CliError::usage(e.to_string()))?
            .install(|| dispatch(out)),
    }
}
