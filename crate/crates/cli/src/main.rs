use std::process::ExitCode;

use clap::Parser;
use riordan_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code as u8)
        }
        Err(fail) => {
            eprintln!("error: {}", fail.message);
            ExitCode::from(fail.code as u8)
        }
    }
}
