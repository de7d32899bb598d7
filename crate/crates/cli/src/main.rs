use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use facet_kernel::{compute_kernel, emit_table, parse_group_spec, verify_sweep, Error, TableFormat, Twist};

/// Exit code for malformed or invalid specifications.
const EXIT_VALIDATION: u8 = 2;
/// Exit code when the oracle and a closed form disagree.
const EXIT_CONSISTENCY: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "facet-kernel",
    version,
    about = "Galois-cohomology kernels of quasi-split adjoint groups, by facet type"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute the kernel of a group specification and print the report as JSON.
    Compute {
        /// JSON group specification.
        specfile: PathBuf,
    },
    /// Print the kernel table of a twisted form up to a maximal rank.
    Table {
        /// One of 2A, 2D, 3D4, 6D4, 2E6.
        #[arg(long)]
        twist: String,
        #[arg(long)]
        max_rank: usize,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// Compare the closed forms with the oracle on every invariant type.
    Verify {
        #[arg(long, default_value_t = 12)]
        max_a: usize,
        #[arg(long, default_value_t = 10)]
        max_d: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

impl From<Format> for TableFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Tsv => TableFormat::Tsv,
            Format::Json => TableFormat::Json,
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Compute { specfile } => {
            let text =
                fs::read_to_string(&specfile).with_context(|| format!("reading {}", specfile.display()))?;
            let spec = parse_group_spec(&text)?;
            let report = compute_kernel(&spec)?;
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Table {
            twist,
            max_rank,
            format,
        } => {
            let twist: Twist = twist.parse()?;
            print!("{}", emit_table(twist, max_rank, format.into())?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { max_a, max_d } => {
            let summary = verify_sweep(max_a, max_d)?;
            println!("{}", serde_json::to_string_pretty(&summary)?);
            if summary.is_clean() {
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!("{} mismatches", summary.mismatches.len());
                Ok(ExitCode::FAILURE)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            match err.downcast_ref::<Error>() {
                Some(e) if e.is_validation() => ExitCode::from(EXIT_VALIDATION),
                Some(Error::Consistency(_)) => ExitCode::from(EXIT_CONSISTENCY),
                _ => ExitCode::FAILURE,
            }
        }
    }
}
