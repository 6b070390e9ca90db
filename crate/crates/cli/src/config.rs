//! JSON experiment configuration.
//!
//! Each top-level field is decoded separately so that errors can name the
//! offending field.

use std::path::PathBuf;

use grandlp::dynamics::Transformation;
use grandlp::ergodic::{default_schedule, TheoremSettings};
use grandlp::norms::GrandGrid;
use grandlp::random::{random_finite_system, rng_from_seed};
use grandlp::{Exponent, FunctionRep, ProbabilitySpace, QuadratureSpec};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::CliError;

const KNOWN_FIELDS: &[&str] = &[
    "space",
    "exponent",
    "function",
    "transformation",
    "theta",
    "n_schedule",
    "eps_grid",
    "output",
    "seed",
    "random_system",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SpaceConfig {
    Finite { weights: Vec<f64> },
    Uniform { atoms: usize },
    Interval {
        #[serde(default = "default_panels")]
        panels: usize,
        #[serde(default = "default_nodes")]
        nodes_per_panel: usize,
        #[serde(default)]
        singular_points: Vec<f64>,
    },
}

fn default_panels() -> usize {
    QuadratureSpec::default().panels
}

fn default_nodes() -> usize {
    QuadratureSpec::default().nodes_per_panel
}

impl SpaceConfig {
    pub fn build(&self) -> grandlp::Result<ProbabilitySpace> {
        match self {
            SpaceConfig::Finite { weights } => ProbabilitySpace::finite(weights.clone()),
            SpaceConfig::Uniform { atoms } => ProbabilitySpace::uniform(*atoms),
            SpaceConfig::Interval { panels, nodes_per_panel, singular_points } => {
                ProbabilitySpace::interval(QuadratureSpec {
                    panels: *panels,
                    nodes_per_panel: *nodes_per_panel,
                    singular_points: singular_points.clone(),
                })
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EpsGridConfig {
    /// ε values for the modular contraction rows.
    pub contraction: Option<Vec<f64>>,
    /// ε sequence for the closure-membership test.
    pub vanishing: Option<Vec<f64>>,
    /// Sampling of the grand-norm supremum.
    pub grand: GrandGrid,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub dir: PathBuf,
    pub svg: bool,
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig { dir: PathBuf::from("grandlp-out"), svg: true }
    }
}

/// Replaces space, exponent, function and transformation with a random
/// finite system drawn from `seed`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomSystemConfig {
    pub max_atoms: usize,
}

/// The four objects an experiment runs on.
#[derive(Debug, Clone, PartialEq)]
pub struct System {
    pub space: ProbabilitySpace,
    pub exponent: Exponent,
    pub function: FunctionRep,
    pub transformation: Transformation,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub space: Option<SpaceConfig>,
    pub exponent: Option<Exponent>,
    pub function: Option<FunctionRep>,
    pub transformation: Option<Transformation>,
    pub theta: f64,
    pub n_schedule: Vec<u64>,
    pub eps_grid: EpsGridConfig,
    pub output: OutputConfig,
    pub seed: u64,
    pub random_system: Option<RandomSystemConfig>,
}

fn field<T: DeserializeOwned>(obj: &Map<String, Value>, name: &str) -> Result<Option<T>, CliError> {
    obj.get(name)
        .map(|v| serde_json::from_value(v.clone()).map_err(|e| CliError::field("invalid_config", name, e.to_string())))
        .transpose()
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let value: Value = serde_json::from_str(text).map_err(|e| CliError::new("parse", e.to_string()))?;
        let Value::Object(obj) = value else {
            return Err(CliError::new("parse", "config must be a JSON object"));
        };
        if let Some(unknown) = obj.keys().find(|k| !KNOWN_FIELDS.contains(&k.as_str())) {
            return Err(CliError::field("invalid_config", unknown, "unknown field"));
        }
        let theta = field(&obj, "theta")?.ok_or_else(|| CliError::field("invalid_config", "theta", "missing field"))?;
        let config = ExperimentConfig {
            space: field(&obj, "space")?,
            exponent: field(&obj, "exponent")?,
            function: field(&obj, "function")?,
            transformation: field(&obj, "transformation")?,
            theta,
            n_schedule: field(&obj, "n_schedule")?.unwrap_or_else(default_schedule),
            eps_grid: field(&obj, "eps_grid")?.unwrap_or_default(),
            output: field(&obj, "output")?.unwrap_or_default(),
            seed: field(&obj, "seed")?.unwrap_or(0),
            random_system: field(&obj, "random_system")?,
        };
        if config.random_system.is_none() {
            for (name, present) in [
                ("space", config.space.is_some()),
                ("exponent", config.exponent.is_some()),
                ("function", config.function.is_some()),
                ("transformation", config.transformation.is_some()),
            ] {
                if !present {
                    return Err(CliError::field("invalid_config", name, "missing field"));
                }
            }
        }
        Ok(config)
    }

    pub fn load(path: &std::path::Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::new("io", format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Builds and validates the system. Errors name the field at fault.
    pub fn system(&self) -> Result<System, CliError> {
        if let Some(r) = self.random_system {
            if r.max_atoms < 2 {
                return Err(CliError::field("invalid_config", "random_system", "max_atoms must be at least 2"));
            }
            let s = random_finite_system(&mut rng_from_seed(self.seed), r.max_atoms);
            return Ok(System { space: s.space, exponent: s.exponent, function: s.function, transformation: s.transformation });
        }
        let (Some(space), Some(exponent), Some(function), Some(transformation)) =
            (&self.space, &self.exponent, &self.function, &self.transformation)
        else {
            unreachable!("presence is checked in parse");
        };
        let space = space.build().map_err(|e| CliError::field("invalid_space", "space", e.to_string()))?;
        exponent.validate(&space).map_err(|e| CliError::field("invalid_exponent", "exponent", e.to_string()))?;
        function.validate(&space).map_err(|e| CliError::field("invalid_function", "function", e.to_string()))?;
        transformation
            .validate(&space)
            .map_err(|e| CliError::field("invalid_transformation", "transformation", e.to_string()))?;
        Ok(System { space, exponent: exponent.clone(), function: function.clone(), transformation: transformation.clone() })
    }

    pub fn check_theta(&self) -> Result<(), CliError> {
        if self.theta > 0.0 && self.theta.is_finite() {
            Ok(())
        } else {
            Err(CliError::field("invalid_theta", "theta", format!("theta must be positive, got {}", self.theta)))
        }
    }

    pub fn settings(&self) -> Result<TheoremSettings, CliError> {
        self.check_theta()?;
        let mut settings = TheoremSettings::new(self.theta);
        settings.n_schedule = self.n_schedule.clone();
        settings.contraction_eps = self.eps_grid.contraction.clone();
        settings.vanishing_eps = self.eps_grid.vanishing.clone();
        settings.grid = self.eps_grid.grand;
        settings.validate().map_err(CliError::from)?;
        Ok(settings)
    }
}
