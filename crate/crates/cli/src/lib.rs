//! Command-line front end for the `constlab` engine.

pub mod args;
mod commands;
pub mod theorems;

use clap::Parser;

pub use args::Cli;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FINDING: u8 = 1;
pub const EXIT_ERROR: u8 = 2;

/// Runs one parsed invocation and returns its exit status.
pub fn run(cli: Cli) -> u8 {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(threads) = cli.threads {
        pool = pool.num_threads(threads);
    }
    let outcome = pool
        .build()
        .map_err(anyhow::Error::from)
        .and_then(|pool| pool.install(|| commands::dispatch(&cli)));
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_ERROR
        }
    }
}

pub fn run_from_env() -> u8 {
    match Cli::try_parse() {
        Ok(cli) => run(cli),
        Err(e) => {
            let _ = e.print();
            if e.use_stderr() {
                EXIT_ERROR
            } else {
                EXIT_OK
            }
        }
    }
}
