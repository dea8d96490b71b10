//! `gabor-forge`: generate CAZAC sequences, inspect their ambiguity
//! functions and certify Gabor frames from the command line.
//!
//! Exit codes: 0 success, 1 internal cross-check failure, 2 user error.

mod args;
mod commands;

use clap::Parser;
use std::process::ExitCode;

fn main() -> ExitCode {
    let cli = match args::Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let internal = matches!(
                e.downcast_ref::<gabor_forge_core::Error>(),
                Some(gabor_forge_core::Error::CrossCheck(_))
            );
            ExitCode::from(if internal { 1 } else { 2 })
        }
    }
}
