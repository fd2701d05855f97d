mod args;
mod commands;
mod error;
mod source;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use commands::ScanRequest;
use error::CliError;

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Partition { graph, output } => commands::partition(&graph, &output),
        Command::Ctqw {
            graph,
            gamma,
            tmax,
            samples,
            mode,
            output,
        } => commands::ctqw(&graph, gamma, tmax, samples, mode, &output),
        Command::Dtqw {
            graph,
            steps,
            mode,
            output,
        } => commands::dtqw(&graph, steps, mode, &output),
        Command::Scan {
            family,
            n,
            d,
            seed,
            walk,
            marked,
            gamma,
            tmax,
            samples,
            steps,
            output,
        } => commands::scan(
            &ScanRequest {
                family,
                sizes: n,
                d,
                seed,
                walk,
                marked,
                gamma,
                tmax,
                samples,
                steps,
            },
            &output,
        ),
        Command::KonnoDemo { steps, output } => commands::konno_demo(&steps, &output),
    }
}

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
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qwsearch: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
