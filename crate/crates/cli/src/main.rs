use std::process::ExitCode;

use clap::Parser;
use reaction_lens_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("reaction-lens: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
