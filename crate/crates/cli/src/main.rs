mod args;
mod commands;
mod error;
mod table;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use crate::args::{Cli, Format};
use crate::error::CliError;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("fracwave: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let table = commands::run(&cli.command, cli.eps)?;
    let text = match cli.format {
        Format::Csv => table.to_csv(),
        Format::Json => {
            let meta = serde_json::to_value(cli).expect("config is plain data");
            table.to_json(&meta)
        }
    };
    match &cli.output {
        Some(path) => table::write_atomic(path, &text),
        None => table::write_stdout(&text),
    }
}
