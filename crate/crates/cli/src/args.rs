use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use subordkit::TheoremId;

#[derive(Debug, Parser)]
#[command(
    name = "subordkit",
    version,
    about = "Certify subordination implications into the exponential starlike class"
)]
pub struct Cli {
    /// Write null for wall_time_ms so reports are byte-identical across runs.
    #[arg(long, global = true)]
    pub no_timing: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sweep the admissibility grid for one theorem.
    VerifyTheorem(VerifyArgs),
    /// Bisect on the reduced difference for the smallest certified value.
    FindThreshold(ThresholdArgs),
    /// Random search for counterexamples to one implication.
    Falsify(FalsifyArgs),
    /// Classify f from a coefficient file and check the corollary conditions.
    CheckFunction(CheckArgs),
    /// Write boundary samples of a domain.
    EmitBoundary(EmitArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::VerifyTheorem(_) => "verify-theorem",
            Command::FindThreshold(_) => "find-threshold",
            Command::Falsify(_) => "falsify",
            Command::CheckFunction(_) => "check-function",
            Command::EmitBoundary(_) => "emit-boundary",
        }
    }
}

#[derive(Debug, Clone, Copy, Args, Serialize)]
pub struct JanowskiArgs {
    #[arg(long = "C", allow_hyphen_values = true)]
    #[serde(rename = "C")]
    pub c: Option<f64>,
    #[arg(long = "D", allow_hyphen_values = true)]
    #[serde(rename = "D")]
    pub d: Option<f64>,
}

impl JanowskiArgs {
    pub fn pair(&self) -> anyhow::Result<Option<(f64, f64)>> {
        match (self.c, self.d) {
            (Some(c), Some(d)) => Ok(Some((c, d))),
            (None, None) => Ok(None),
            _ => anyhow::bail!("--C and --D go together"),
        }
    }
}

#[derive(Debug, Clone, Copy, Args, Serialize)]
pub struct MkArgs {
    /// Third order: the constant m >= 2.
    #[arg(long, default_value_t = 2.0)]
    pub m: f64,
    /// Third order: the constant k >= m.
    #[arg(long, default_value_t = 2.0)]
    pub k: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    #[arg(long)]
    pub id: TheoremId,
    #[arg(long)]
    pub alpha1: f64,
    #[arg(long)]
    pub alpha2: f64,
    #[arg(long, default_value_t = 0.0)]
    pub alpha3: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub janowski: JanowskiArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub mk: MkArgs,
    #[arg(long, default_value_t = 1024)]
    pub theta_samples: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct ThresholdArgs {
    #[arg(long)]
    pub id: TheoremId,
    #[arg(long, default_value_t = 0.01)]
    pub alpha2: f64,
    /// Ignored for second-order theorems.
    #[arg(long, default_value_t = 0.1)]
    pub alpha3: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub janowski: JanowskiArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub mk: MkArgs,
    #[arg(long, default_value_t = 1024)]
    pub theta_samples: usize,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct FalsifyArgs {
    #[arg(long)]
    pub id: TheoremId,
    #[arg(long)]
    pub alpha1: f64,
    #[arg(long)]
    pub alpha2: f64,
    #[arg(long, default_value_t = 0.0)]
    pub alpha3: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub janowski: JanowskiArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub mk: MkArgs,
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct CheckArgs {
    /// JSON file `{"class": "A", "coeffs": [[re, im], ...]}`, index = degree.
    #[arg(long)]
    pub file: PathBuf,
    #[arg(long)]
    pub alpha1: Option<f64>,
    #[arg(long)]
    pub alpha2: Option<f64>,
    #[arg(long)]
    pub alpha3: Option<f64>,
    /// Also test the operator against this domain.
    #[arg(long)]
    pub domain: Option<String>,
    #[command(flatten)]
    #[serde(flatten)]
    pub janowski: JanowskiArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub mk: MkArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args, Serialize)]
pub struct EmitArgs {
    #[arg(long)]
    pub domain: String,
    #[arg(long, default_value_t = 1024)]
    pub samples: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub janowski: JanowskiArgs,
    /// CSV path; crescent also writes `<stem>_c1.csv` and `<stem>_c2.csv`.
    /// With `--format json` the rows go into the report instead.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}
