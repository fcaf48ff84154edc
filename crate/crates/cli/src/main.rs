use std::fs;
use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

mod commands;

use drinfeld_core::error::Error;

#[derive(Parser)]
#[command(name = "drinfeld", version, about = "Rank-2 Drinfeld modules over F_q(T)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Clone, Debug)]
pub enum Command {
    /// Points of phi[a] over the residue field at a prime P
    Torsion(Opts),
    /// Degree of the division field F(phi[l]) over F
    GaloisOrder(Opts),
    /// Certificate that the mod-l image is all of GL_2
    Image(Opts),
    /// Quadratic subextensions of the division fields and their classification
    Entangle(Opts),
    /// Non-surjectivity witness from the degree-1 moduli
    Witness(Opts),
    /// Finite group checks
    VerifyGroups(Opts),
    /// Frobenius characteristic polynomials at good primes
    Frobenius(Opts),
    /// The full acceptance battery
    Suite(Opts),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Args, Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Opts {
    /// Order of the constant field: 2, 3, 4, 8, 9 or 16 (default 3)
    #[arg(long)]
    pub q: Option<usize>,
    /// Coefficient of tau (with --g2, instead of --phi)
    #[arg(long)]
    pub g1: Option<String>,
    /// Coefficient of tau^2
    #[arg(long)]
    pub g2: Option<String>,
    /// phi_T as a skew polynomial in t, e.g. "T + t - T^2*t^2"
    #[arg(long)]
    pub phi: Option<String>,
    /// A prime of F_q[T] (reduction prime, or the modulus l for galois-order/image)
    #[arg(long)]
    pub prime: Option<String>,
    /// Modulus a or l
    #[arg(long)]
    pub modulus: Option<String>,
    /// Sampling degree bound
    #[arg(long)]
    pub max_deg: Option<usize>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long, default_value_t = drinfeld_core::suite::DEFAULT_SEED)]
    pub seed: u64,
    /// Which check for verify-groups: gl2f2, 5.5, 5.6 or 6.1
    #[arg(long)]
    pub lemma: Option<String>,
    /// Write output here instead of stdout
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

/// Either a bad configuration (exit 2) or a failed computation (exit 3).
#[derive(Debug)]
pub enum Failure {
    Config(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Syntax { .. }
            | Error::FieldMismatch(_)
            | Error::UnsupportedField(_)
            | Error::InvalidInput(_)
            | Error::RankMismatch { .. } => Failure::Config(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

/// Result payload plus the CSV table when the command has one.
pub struct Outcome {
    pub payload: Value,
    pub table: Option<Vec<Vec<String>>>,
    /// Verdicts failed (only `suite`).
    pub acceptance_failed: bool,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct RunReport<'a> {
    command: &'a str,
    config: &'a Opts,
    version: &'a str,
    payload: Value,
    wall_time_ms: u128,
}

fn render_csv(rows: &[Vec<String>]) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.write_record(r).map_err(|e| Failure::Compute(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Compute(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Failure::Compute(e.to_string()))
}

fn emit(opts: &Opts, text: &str) -> Result<(), Failure> {
    match &opts.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Config(format!("cannot write {path}: {e}"))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| Failure::Compute(e.to_string()))
        }
    }
}

fn name(c: &Command) -> &'static str {
    match c {
        Command::Torsion(_) => "torsion",
        Command::GaloisOrder(_) => "galois-order",
        Command::Image(_) => "image",
        Command::Entangle(_) => "entangle",
        Command::Witness(_) => "witness",
        Command::VerifyGroups(_) => "verify-groups",
        Command::Frobenius(_) => "frobenius",
        Command::Suite(_) => "suite",
    }
}

fn run(cmd: &Command) -> Result<bool, Failure> {
    let opts = match cmd {
        Command::Torsion(o)
        | Command::GaloisOrder(o)
        | Command::Image(o)
        | Command::Entangle(o)
        | Command::Witness(o)
        | Command::VerifyGroups(o)
        | Command::Frobenius(o)
        | Command::Suite(o) => o,
    };
    let start = Instant::now();
    let outcome = commands::dispatch(cmd, opts)?;
    let wall = start.elapsed();
    let text = match opts.format {
        Format::Json => {
            let report = RunReport {
                command: name(cmd),
                config: opts,
                version: env!("CARGO_PKG_VERSION"),
                payload: outcome.payload,
                wall_time_ms: wall.as_millis(),
            };
            let mut s = serde_json::to_string_pretty(&report).map_err(|e| Failure::Compute(e.to_string()))?;
            s.push('\n');
            s
        }
        Format::Csv => {
            let table = outcome
                .table
                .ok_or_else(|| Failure::Config(format!("--format csv is not available for {}", name(cmd))))?;
            render_csv(&table)?
        }
    };
    emit(opts, &text)?;
    Ok(!outcome.acceptance_failed)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(4),
        Err(Failure::Config(m)) => {
            eprintln!("configuration error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(m)) => {
            eprintln!("computation error: {m}");
            ExitCode::from(3)
        }
    }
}
