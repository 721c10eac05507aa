//! Command-line front end: the group-spec grammar, one subcommand per
//! verifier, JSON-configured sweeps and report emission.
//!
//! Exit status is 0 when every emitted verdict passes, 1 when some verdict
//! fails or a sweep cell errors, and 2 when the command itself errors.

pub mod args;
pub mod commands;
pub mod error;
pub mod family;
pub mod grammar;
pub mod output;
pub mod sweep;

use std::path::PathBuf;

use clap::Parser;
use ltoral::report::VerificationReport;
use serde::Serialize;

use args::{Cli, Command, Format};
use error::{CliError, ErrorRecord};
use sweep::{CellRecord, Summary};

pub use grammar::{parse_group_spec, GroupExpr};

/// Environment variable read for the element budget when `--budget` is absent.
pub const BUDGET_ENV: &str = "LTORAL_BUDGET";

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Record {
    Report(Box<VerificationReport>),
    Error(ErrorRecord),
    Cell(Box<CellRecord>),
    Summary { summary: Summary },
}

impl Record {
    pub fn passes(&self) -> bool {
        match self {
            Record::Report(r) => r.pass,
            Record::Error(_) => false,
            Record::Cell(c) => !matches!(c.status, sweep::Status::Fail | sweep::Status::Error),
            Record::Summary { summary } => summary.ok(),
        }
    }

    pub fn report(&self) -> Option<&VerificationReport> {
        match self {
            Record::Report(r) => Some(r),
            Record::Cell(c) => c.report.as_deref(),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub records: Vec<Record>,
    pub exit_code: i32,
    pub format: Format,
    pub output: Option<PathBuf>,
}

impl Outcome {
    fn error(e: CliError, format: Format) -> Self {
        Outcome { records: vec![Record::Error(e.record())], exit_code: 2, format, output: None }
    }

    pub fn render(&self) -> String {
        output::render(&self.records, self.format)
    }

    pub fn reports(&self) -> impl Iterator<Item = &VerificationReport> {
        self.records.iter().filter_map(Record::report)
    }
}

pub fn set_budget(b: usize) -> error::Result<()> {
    if b == 0 {
        return Err(CliError::Args("budget must be positive".into()));
    }
    std::env::set_var(BUDGET_ENV, b.to_string());
    Ok(())
}

pub fn run(cli: &Cli) -> Outcome {
    let mut format = cli.format;
    let mut output = cli.output.clone();
    if let Command::Sweep { config } = &cli.command {
        if let Ok(cfg) = sweep::load_config(config) {
            if output.is_none() {
                output = cfg.output.clone();
            }
            if format == Format::Json {
                format = cfg.format.unwrap_or(format);
            }
        }
    }
    if let Some(b) = cli.budget {
        if let Err(e) = set_budget(b) {
            return Outcome::error(e, format);
        }
    }
    match commands::execute(&cli.command, cli.timing) {
        Ok(records) => {
            let exit_code = if records.iter().all(Record::passes) { 0 } else { 1 };
            Outcome { records, exit_code, format, output }
        }
        Err(e) => Outcome { output, ..Outcome::error(e, format) },
    }
}

/// Parses and runs an argument list (without the program name).
pub fn run_args<S: AsRef<str>>(args: &[S]) -> Outcome {
    let argv = std::iter::once("ltoral").chain(args.iter().map(AsRef::as_ref));
    match Cli::try_parse_from(argv) {
        Ok(cli) => run(&cli),
        Err(e) => Outcome::error(CliError::Args(e.to_string().trim().to_string()), Format::Json),
    }
}
