//! Command-line experiment runner for grandlp.
//!
//! `grandlp verify CONFIG` runs the full theorem harness and writes
//! `report.json`, `convergence.csv` and (optionally) `convergence.svg`.
//! `norm`, `grand-norm` and `membership` print a single JSON document.

pub mod config;
pub mod output;
pub mod svg;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use grandlp::ergodic::verify_theorem;
use grandlp::norms::ShiftedNorms;
use serde::Serialize;

pub use config::ExperimentConfig;

pub const EXIT_PASS: u8 = 0;
pub const EXIT_VIOLATION: u8 = 1;
pub const EXIT_ERROR: u8 = 2;

/// A failure reported as one JSON line on stderr.
#[derive(Debug, Clone, PartialEq, Serialize, thiserror::Error)]
#[error("{code}: {message}")]
pub struct CliError {
    pub code: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    pub message: String,
}

impl CliError {
    pub fn new(code: &str, message: impl Into<String>) -> Self {
        CliError { code: code.into(), field: None, message: message.into() }
    }

    pub fn field(code: &str, field: &str, message: impl Into<String>) -> Self {
        CliError { code: code.into(), field: Some(field.into()), message: message.into() }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(&serde_json::json!({ "error": self })).expect("error serializes")
    }
}

impl From<grandlp::Error> for CliError {
    fn from(e: grandlp::Error) -> Self {
        use grandlp::Error as E;
        let message = e.to_string();
        match e {
            E::InvalidTheta(_) => CliError::field("invalid_theta", "theta", message),
            E::Hypothesis { check, .. } => CliError::field(&check.to_string(), "transformation", message),
            E::InvalidParameter { name, .. } => CliError::field("invalid_parameter", name, message),
            E::InvalidSpace(_) => CliError::field("invalid_space", "space", message),
            E::InvalidFunction(_) => CliError::field("invalid_function", "function", message),
            E::InvalidExponent(_) => CliError::field("invalid_exponent", "exponent", message),
            E::InvalidTransformation(_) => CliError::field("invalid_transformation", "transformation", message),
            E::EpsOutOfRange { .. } => CliError::field("invalid_parameter", "eps", message),
            _ => CliError::new("numerical", message),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "grandlp", version, about = "Grand variable-exponent Lebesgue norms and ergodic averages")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Modular and Luxemburg norm of f at one shift ε.
    Norm {
        #[command(flatten)]
        common: Common,
        /// Shift ε; 0 or inside (0, p⁻-1).
        #[arg(long, default_value_t = 0.0)]
        eps: f64,
        /// Relative bisection width of the Luxemburg norm.
        #[arg(long, default_value_t = grandlp::norms::DEFAULT_REL_TOL)]
        rel_tol: f64,
    },
    /// Grand norm of f.
    GrandNorm {
        #[command(flatten)]
        common: Common,
    },
    /// Whether f lies in the closure subspace (vanishing weighted norms as ε → 0).
    Membership {
        #[command(flatten)]
        common: Common,
    },
    /// Full theorem run with report, CSV and SVG outputs.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Output directory, overriding `output.dir`.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        /// Comma-separated n values, overriding `n_schedule`.
        #[arg(long, value_delimiter = ',')]
        n_schedule: Option<Vec<u64>>,
        /// Skip the SVG plot.
        #[arg(long)]
        no_svg: bool,
    },
}

#[derive(Debug, Args)]
pub struct Common {
    /// Path to the JSON experiment config.
    pub config: PathBuf,
    /// Overrides `theta` from the config.
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<f64>,
    /// Overrides `seed` from the config.
    #[arg(long)]
    pub seed: Option<u64>,
}

impl Common {
    fn load(&self) -> Result<ExperimentConfig, CliError> {
        let mut config = ExperimentConfig::load(&self.config)?;
        if let Some(theta) = self.theta {
            config.theta = theta;
        }
        if let Some(seed) = self.seed {
            config.seed = seed;
        }
        Ok(config)
    }
}

/// What the binary prints and returns.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub exit_code: u8,
    pub stdout: String,
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serializes")
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Norm { common, eps, rel_tol } => {
            let config = common.load()?;
            let system = config.system()?;
            let norms = ShiftedNorms::new(&system.space, &system.function, &system.exponent)?;
            let out = serde_json::json!({
                "eps": eps,
                "modular": norms.modular(eps)?,
                "luxemburg": norms.luxemburg(eps, rel_tol)?,
            });
            Ok(Outcome { exit_code: EXIT_PASS, stdout: json(&out) })
        }
        Command::GrandNorm { common } => {
            let config = common.load()?;
            config.check_theta()?;
            let system = config.system()?;
            let est = ShiftedNorms::new(&system.space, &system.function, &system.exponent)?
                .grand_norm(config.theta, &config.eps_grid.grand)?;
            Ok(Outcome { exit_code: EXIT_PASS, stdout: json(&est) })
        }
        Command::Membership { common } => {
            let config = common.load()?;
            config.check_theta()?;
            let system = config.system()?;
            let verdict = ShiftedNorms::new(&system.space, &system.function, &system.exponent)?
                .vanishing_limit(config.theta, config.eps_grid.vanishing.as_deref())?;
            Ok(Outcome { exit_code: EXIT_PASS, stdout: json(&verdict) })
        }
        Command::Verify { common, out_dir, n_schedule, no_svg } => {
            let mut config = common.load()?;
            if let Some(dir) = out_dir {
                config.output.dir = dir;
            }
            if let Some(schedule) = n_schedule {
                config.n_schedule = schedule;
            }
            if no_svg {
                config.output.svg = false;
            }
            let settings = config.settings()?;
            let system = config.system()?;
            let report =
                verify_theorem(&system.space, &system.function, &system.transformation, &system.exponent, &settings)?;
            let files = output::write_report(&config.output, &report)?;
            let summary = serde_json::json!({
                "passed": report.passed,
                "violations": report.violations,
                "files": files,
            });
            let exit_code = if report.passed { EXIT_PASS } else { EXIT_VIOLATION };
            Ok(Outcome { exit_code, stdout: json(&summary) })
        }
    }
}
