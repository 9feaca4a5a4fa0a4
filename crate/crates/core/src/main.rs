use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use collapse_bounds::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            _ => {
                let rendered = e.to_string();
                let first = rendered.lines().next().unwrap_or("invalid usage");
                let first = first.trim_start_matches("error: ");
                eprintln!("error[usage]: {first}");
                for line in rendered.lines().skip(1).filter(|l| !l.trim().is_empty()) {
                    eprintln!("  {line}");
                }
                return ExitCode::from(1);
            }
        },
    };
    ExitCode::from(run(&cli) as u8)
}
