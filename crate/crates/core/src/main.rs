use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use momenta::report::Format;
use momenta::scenario::{exit_code, run_scenario, Overrides, CHECKS};

#[derive(Parser)]
#[command(name = "momenta", version, about = "Exact verification of momentum-map identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the checks of a scenario file.
    Verify {
        file: PathBuf,
        /// Truncation order N, overriding the scenario.
        #[arg(long)]
        order: Option<usize>,
        /// Sampling seed, overriding the scenario and MOMENTA_SEED.
        #[arg(long)]
        seed: Option<u64>,
        /// Comma-separated check names, replacing the scenario's list.
        #[arg(long, value_delimiter = ',')]
        checks: Option<Vec<String>>,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// List the available checks and the sections they need.
    Checks,
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Verify { file, order, seed, checks, format } => {
            match run_scenario(&file, &Overrides { order, seed, checks }) {
                Ok(report) => {
                    print!("{}", report.emit(format));
                    ExitCode::from(exit_code(&report) as u8)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            }
        }
        Command::Checks => {
            for (name, sections) in CHECKS {
                println!("{name}: {}", sections.join(", "));
            }
            ExitCode::SUCCESS
        }
    }
}
