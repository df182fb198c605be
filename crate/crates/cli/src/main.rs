use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use tatecoh_cli::app::{run, Cli, VALIDATION_FAILURE};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let _ = std::io::stdout().write_all(out.stdout.as_bytes());
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(VALIDATION_FAILURE)
        }
    }
}
