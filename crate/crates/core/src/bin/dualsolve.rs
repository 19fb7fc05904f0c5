use std::process::ExitCode;

use clap::Parser;
use dualsolve::cli::{self, RunConfig};

fn main() -> ExitCode {
    let config = RunConfig::parse();
    match cli::run(&config, &mut std::io::stdout()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
