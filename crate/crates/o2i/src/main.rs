use std::io;
use std::process::ExitCode;

use clap::Parser;
use o2i::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli, io::stdout().lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("o2i: {e}");
            ExitCode::from(e.code)
        }
    }
}
