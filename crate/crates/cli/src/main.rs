//! Command-line front end: analyze a model, dump the small-step survey, or
//! run the verification suites.
//!
//! Exit codes: 0 success, 2 parse error, 3 inessential model, 4 internal
//! inconsistency (ledger integrity), 1 anything else.

mod report;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use walkbound::smallsteps::{enumerate_small_models, survey_to_csv, survey_to_json};
use walkbound::{Error, StepSet};

#[derive(Parser)]
#[command(name = "walkbound", version, about = "Growth-constant bounds for orthant-restricted lattice walks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Full pipeline for one model: bounds, enumeration, ledger verdict.
    Analyze {
        /// Step set, e.g. "N,SW,S,SE" or "(0,1)x1;(1,-1)x2"
        model: String,
        /// Enumeration length (default 24 in 2D, 16 above)
        #[arg(long)]
        nmax: Option<usize>,
        /// Angle-sweep grid size
        #[arg(long, default_value_t = 1001)]
        grid: usize,
        /// Resolution tolerance for the ledger
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// The census of 79 non-isomorphic essential small-step models.
    Survey {
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Run the invariant suites; nonzero exit on any failure.
    Verify {
        /// Run only the named suites (repeatable); all by default
        #[arg(long)]
        suite: Vec<String>,
        #[arg(long, default_value_t = 24)]
        nmax: usize,
        /// Grid size for the continuity suite
        #[arg(long, default_value_t = 1572)]
        grid: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Parse(_) => 2,
        Error::Inessential { .. } => 3,
        Error::LedgerIntegrity { .. } => 4,
        _ => 1,
    }
}

fn run() -> Result<ExitCode, Error> {
    match Cli::parse().command {
        Command::Analyze {
            model,
            nmax,
            grid,
            tol,
            format,
        } => {
            if format == Format::Csv {
                return Err(Error::Parse("analyze emits JSON only".into()));
            }
            let s: StepSet = model.parse()?;
            let opts = report::AnalyzeOptions {
                n_max: nmax,
                gridsize: grid.max(2),
                tolerance: tol,
            };
            let value = report::analyze(&model, &s, &opts)?;
            println!("{}", serde_json::to_string_pretty(&value).expect("valid JSON"));
            Ok(ExitCode::SUCCESS)
        }
        Command::Survey { format } => {
            let entries = enumerate_small_models()?;
            match format {
                Format::Csv => print!("{}", survey_to_csv(&entries)),
                Format::Json => {
                    let mut value = survey_to_json(&entries);
                    report::round_floats(&mut value);
                    println!("{}", serde_json::to_string_pretty(&value).expect("valid JSON"));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            suite,
            nmax,
            grid,
            tol,
        } => {
            for name in &suite {
                if !verify::SUITE_NAMES.contains(&name.as_str()) {
                    return Err(Error::Parse(format!(
                        "unknown suite '{name}'; available: {}",
                        verify::SUITE_NAMES.join(", ")
                    )));
                }
            }
            let cfg = verify::VerifyConfig {
                n_max: nmax,
                gridsize: grid.max(2),
                tolerance: tol,
            };
            if verify::run(&suite, &cfg) {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::FAILURE)
            }
        }
    }
}
