use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use jostkohn_cli::cli::Cli;
use jostkohn_cli::commands;
use jostkohn_cli::error::{CliError, Result, EXIT_FAILURE, EXIT_OK, EXIT_USAGE};
use jostkohn_cli::output::render;

fn exit(code: i32) -> ExitCode {
    ExitCode::from(code as u8)
}

fn run(cli: Cli) -> Result<bool> {
    let inv = cli.into_invocation()?;
    let doc = commands::run(&inv.config)?;
    let passed = doc.meta.get("passed").and_then(|v| v.as_bool()).unwrap_or(true);
    match &inv.output {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            render(&doc, &inv.config, &mut w)?;
            w.flush()?;
        }
        None => {
            let mut w = io::stdout().lock();
            render(&doc, &inv.config, &mut w)?;
            w.flush()?;
        }
    }
    Ok(passed)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => exit(EXIT_OK),
                _ => exit(EXIT_USAGE),
            };
        }
    };
    match run(cli) {
        Ok(true) => exit(EXIT_OK),
        Ok(false) => {
            eprintln!("validation failed");
            exit(EXIT_FAILURE)
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit(CliError::exit_code(&e))
        }
    }
}
