//! Command-line front end for `infolab`.
//!
//! [`run`] executes a parsed [`RunConfig`] and returns the exit status with
//! everything that would go to stdout and stderr, so the binary and the
//! tests share one code path.
//!
//! Exit statuses: 0 on success, 1 when an input fails validation (mass not
//! one, negative cell, impossible ciphertext, ...), 2 on I/O, syntax or
//! usage errors.

pub mod reports;
pub mod reproduce;
pub mod views;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use infolab_core::io::{read_dist_input, read_joint, read_model_json};
use infolab_core::{parse_rational, search_pointwise_increase, Error, LoadError, ParseError, Prob};
use serde::Serialize;

use reports::{CheckReport, EntropyReport, OtpReport, Report, SearchReport};
use reproduce::{ReproduceReport, Target};

pub const SCHEMA_VERSION: &str = "1";
pub const LOG_BASE: &str = "bits";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReproduceTarget {
    Table1,
    Example1,
    Example2,
    All,
}

#[derive(Clone, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Entropy of a distribution, or all entropy functionals of a joint
    Entropy {
        /// CSV or JSON file
        input: PathBuf,
    },
    /// Chain rule, subadditivity and averaged-conditioning verdicts
    Check {
        /// Joint distribution as CSV or JSON
        input: Option<PathBuf>,
        /// Also run a seeded sweep over this many random joints (up to 5x5)
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
    /// Exhaustive grid search for rows whose conditional entropy beats H(y)
    Search {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        /// Grid step, e.g. 1/10
        #[arg(long)]
        step: String,
    },
    /// One-time-pad posterior and perfect-secrecy analysis
    Otp {
        /// JSON model {"prior": [...], "key": [...]}
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        ciphertext: usize,
        /// Mix the prior toward the uniform belief with this weight
        #[arg(long)]
        blend: Option<String>,
    },
    /// Reports for the built-in fixtures
    Reproduce {
        #[arg(value_enum, default_value_t = ReproduceTarget::All)]
        target: ReproduceTarget,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Entropy { .. } => "entropy",
            Command::Check { .. } => "check",
            Command::Search { .. } => "search",
            Command::Otp { .. } => "otp",
            Command::Reproduce { .. } => "reproduce",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Parser)]
#[command(name = "infolab", version, about = "Exact discrete entropy laboratory")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,
    /// Seed for randomized sweeps; echoed in every report
    #[arg(long, default_value_t = 1, global = true)]
    pub seed: u64,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum Failure {
    Invalid(Error),
    Parse(ParseError),
    Io { path: PathBuf, message: String },
    Usage(String),
}

impl Failure {
    fn status(&self) -> i32 {
        match self {
            Failure::Invalid(_) => 1,
            _ => 2,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Failure::Invalid(e) => e.kind(),
            Failure::Parse(e) => e.kind(),
            Failure::Io { .. } => "Io",
            Failure::Usage(_) => "Usage",
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Invalid(e) => e.to_string(),
            Failure::Parse(e) => e.to_string(),
            Failure::Io { path, message } => format!("{}: {message}", path.display()),
            Failure::Usage(m) => m.clone(),
        }
    }

    /// One JSON object on one line.
    fn line(&self) -> String {
        #[derive(Serialize)]
        struct Line<'a> {
            error: &'a str,
            status: i32,
            message: String,
        }
        let line = Line { error: self.kind(), status: self.status(), message: self.message() };
        serde_json::to_string(&line).expect("error line serializes") + "\n"
    }
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        match e {
            LoadError::Parse(p) => Failure::Parse(p),
            LoadError::Invalid(v) => Failure::Invalid(v),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e)
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Parse(e)
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io { path: path.to_path_buf(), message: e.to_string() })
}

#[derive(Serialize)]
struct Envelope<'a, R: Serialize> {
    schema_version: &'static str,
    command: &'static str,
    log_base: &'static str,
    seed: u64,
    result: &'a R,
}

fn render<R: Report>(config: &RunConfig, report: &R) -> String {
    let command = config.command.name();
    match config.format {
        Format::Json => {
            let env = Envelope { schema_version: SCHEMA_VERSION, command, log_base: LOG_BASE, seed: config.seed, result: report };
            serde_json::to_string_pretty(&env).expect("report serializes") + "\n"
        }
        Format::Table => {
            let mut out = format!(
                "infolab {command}  (schema {SCHEMA_VERSION}, log base 2: {LOG_BASE}, seed {})\n",
                config.seed
            );
            report.table(&mut out);
            out
        }
        Format::Csv => {
            let mut records = vec![
                views::rec("meta", "schema_version", SCHEMA_VERSION),
                views::rec("meta", "command", command),
                views::rec("meta", "log_base", LOG_BASE),
                views::rec("meta", "seed", config.seed.to_string()),
            ];
            report.records(&mut records);
            views::render_csv(&records)
        }
    }
}

fn execute(config: &RunConfig) -> Result<String, Failure> {
    match &config.command {
        Command::Entropy { input } => {
            let parsed = read_dist_input(&read_file(input)?)?;
            Ok(render(config, &EntropyReport::build(&parsed)))
        }
        Command::Check { input, samples } => {
            if input.is_none() && *samples == 0 {
                return Err(Failure::Usage("check needs a joint file, --samples N, or both".into()));
            }
            let joint = match input {
                Some(path) => Some(reports::joint_check(&read_joint(&read_file(path)?)?)),
                None => None,
            };
            let sweep = (*samples > 0).then(|| reports::sweep(config.seed, *samples));
            Ok(render(config, &CheckReport { joint, sweep }))
        }
        Command::Search { rows, cols, step } => {
            let step = parse_rational(step)?;
            let outcome = search_pointwise_increase(*rows, *cols, &step)?;
            Ok(render(config, &SearchReport::build(&outcome)))
        }
        Command::Otp { model, ciphertext, blend } => {
            let model = read_model_json(&read_file(model)?)?;
            let lambda = match blend {
                Some(text) => Some(Prob::new(parse_rational(text)?)?),
                None => None,
            };
            Ok(render(config, &OtpReport::build(&model, *ciphertext, lambda.as_ref())?))
        }
        Command::Reproduce { target } => {
            let target = match target {
                ReproduceTarget::Table1 => Target::Table1,
                ReproduceTarget::Example1 => Target::Example1,
                ReproduceTarget::Example2 => Target::Example2,
                ReproduceTarget::All => Target::All,
            };
            Ok(render(config, &ReproduceReport::build(target)))
        }
    }
}

pub fn run(config: &RunConfig) -> RunOutput {
    let result = execute(config).and_then(|doc| match &config.out {
        Some(path) => std::fs::write(path, &doc)
            .map(|_| String::new())
            .map_err(|e| Failure::Io { path: path.clone(), message: e.to_string() }),
        None => Ok(doc),
    });
    match result {
        Ok(stdout) => RunOutput { status: 0, stdout, stderr: String::new() },
        Err(f) => RunOutput { status: f.status(), stdout: String::new(), stderr: f.line() },
    }
}

/// Parses `args` (including the program name) and runs. Usage errors exit 2.
pub fn run_args<I, T>(args: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(config) => run(&config),
        Err(e) => {
            let status = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if status == 0 {
                RunOutput { status, stdout: text, stderr: String::new() }
            } else {
                RunOutput { status, stdout: String::new(), stderr: text }
            }
        }
    }
}
