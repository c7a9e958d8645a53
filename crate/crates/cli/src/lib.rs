//! Command-line front end: comparisons, sweeps and diagnostic tables.

pub mod args;
pub mod commands;
pub mod error;
pub mod report;

use args::{Cli, Command};
use error::CliResult;

/// Runs one parsed invocation and returns the process exit code.
pub fn run(cli: &Cli) -> CliResult<i32> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build()?;
    pool.install(|| match &cli.command {
        Command::VerifyKernel(a) => commands::cmd_verify_kernel(a),
        Command::Compare(a) => commands::cmd_compare(a, cli.timing),
        Command::Sweep(a) => commands::cmd_sweep(a, cli.timing),
        Command::LaurentTable(a) => commands::cmd_laurent_table(a),
        Command::Selftest(a) => commands::cmd_selftest(a),
    })
}
