//! `conetop`: command-line front end for the `conetop` library.
//!
//! Exit status: 0 positive verdict, 1 negative verdict, 2 input error,
//! 3 internal inconsistency (two independent checks disagreed).

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, ValueEnum};

use conetop::subsets::{DEFAULT_INDEX_GUARD, MAX_INDEX_GUARD};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Homology,
    Family,
    Cones,
    Cover,
    Helly,
    Economy,
    Selftest,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Homology => "homology",
            Command::Family => "family",
            Command::Cones => "cones",
            Command::Cover => "cover",
            Command::Helly => "helly",
            Command::Economy => "economy",
            Command::Selftest => "selftest",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CoverCheck {
    Simple,
    Regular,
    Kkm,
}

#[derive(Debug, Parser)]
#[command(name = "conetop", version, about = "Exact homology checks for set families, covers and market economies")]
pub struct Args {
    pub command: Command,
    /// JSON input file (not used by selftest).
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    pub report: ReportFormat,
    /// Largest index set enumerated over all subsets.
    #[arg(long, env = "CONETOP_GUARD", default_value_t = DEFAULT_INDEX_GUARD)]
    pub max_index_set: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Economy: check all four equilibrium characterizations over subeconomies.
    #[arg(long)]
    pub theorem11: bool,
    /// Cover: which property to check (default: regular for closed sets, simple for open stars).
    #[arg(long, value_enum)]
    pub check: Option<CoverCheck>,
    /// Family: highest k for the A_k / B_k conditions.
    #[arg(long)]
    pub max_k: Option<usize>,
    /// Selftest: use a deliberately wrong acyclicity test.
    #[arg(long, hide = true)]
    pub tamper: bool,
    /// Leave the timing object out of the report.
    #[arg(long, hide = true)]
    pub omit_timing: bool,
}

/// A failed run: exit status and message.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<conetop::Error> for Failure {
    fn from(e: conetop::Error) -> Self {
        Failure {
            code: if e.is_inconsistency() { 3 } else { 2 },
            message: e.to_string(),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure {
            code: 2,
            message: format!("{e:#}"),
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let start = Instant::now();
    let name = args.command.name();
    let outcome = if args.max_index_set > MAX_INDEX_GUARD {
        Err(Failure {
            code: 2,
            message: format!("--max-index-set may not exceed {MAX_INDEX_GUARD}"),
        })
    } else {
        commands::run(&args)
    };
    match outcome {
        Ok((report, code)) => {
            let elapsed = (!args.omit_timing).then(|| start.elapsed());
            let json = report.to_json(elapsed);
            match args.report {
                ReportFormat::Json => println!("{}", serde_json::to_string_pretty(&json).expect("report serializes")),
                ReportFormat::Text => print!("{}", report::render_text(&json)),
            }
            ExitCode::from(code)
        }
        Err(f) => {
            if args.report == ReportFormat::Json {
                println!("{}", serde_json::to_string_pretty(&report::error_json(name, &f.message)).unwrap());
            }
            eprintln!("conetop {name}: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
