use std::fs;
use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qmatkit::report::{
    render, run_report, schmidt_report, CliFailure, ProtocolFile, StateFile, EXIT_PARSE,
};

#[derive(Parser)]
#[command(
    name = "qmatkit",
    about = "Schmidt analysis, entanglement swapping, and teleportation for pure bipartite states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Schmidt analysis of a single state file
    Schmidt {
        /// State file path, or `-` for stdin
        file: String,
        /// Relative threshold for rank and truncation decisions
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Pretty-print the report
        #[arg(long)]
        pretty: bool,
    },
    /// Execute a swap, chain, or teleport protocol file
    Run {
        /// Protocol file path, or `-` for stdin
        file: String,
        /// Relative threshold for rank decisions and oracle comparison
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Re-run the protocol on the brute-force tensor oracle and compare
        #[arg(long)]
        verify_with_oracle: bool,
        /// Pretty-print the report
        #[arg(long)]
        pretty: bool,
    },
}

fn read_input(path: &str) -> Result<String, CliFailure> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliFailure {
                message: format!("stdin: {e}"),
                exit_code: EXIT_PARSE,
            })?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(|e| CliFailure {
            message: format!("{path}: {e}"),
            exit_code: EXIT_PARSE,
        })
    }
}

fn run() -> Result<(), CliFailure> {
    match Cli::parse().command {
        Command::Schmidt { file, tol, pretty } => {
            let text = read_input(&file)?;
            let state = StateFile::parse(&text)?.to_state()?;
            let report = schmidt_report(&state, tol)?;
            print!("{}", render(&report, pretty));
            Ok(())
        }
        Command::Run {
            file,
            tol,
            verify_with_oracle,
            pretty,
        } => {
            let text = read_input(&file)?;
            let protocol = ProtocolFile::parse(&text)?;
            let report = run_report(&protocol, tol, verify_with_oracle)?;
            print!("{}", render(&report, pretty));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.exit_code as u8)
        }
    }
}
