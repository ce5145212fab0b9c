use std::process::ExitCode;

use clap::Parser;
use polymem_cli::{exit_code, run, write_atomic, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            if let Some(out) = &cli.out {
                if let Err(e) = write_atomic(out, &text) {
                    eprintln!("error: {e:#}");
                    return ExitCode::from(polymem_cli::EXIT_INPUT as u8);
                }
            } else {
                print!("{text}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
