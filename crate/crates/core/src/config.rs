//! TOML instance and run configuration.
//!
//! ```toml
//! means = [0.45, 0.50, 0.55]
//! variances = [0.20, 0.20, 0.20]
//! reward_model = "beta"
//! K = 2
//! family = "subsets"
//! sigma_bar_sq = 0.5
//! sigma_sq = 0.25
//!
//! T = 100000       # optional run keys
//! delta = 0.05
//! algorithm = "pascomb"
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::confidence::{Omegas, DEFAULT_EPSILON};
use crate::engine::Algorithm;
use crate::error::{Error, Result};
use crate::lab::{RunConfig, DEFAULT_REPS, REFERENCE_DELTA};
use crate::model::{FamilyKind, Instance, RewardKind, Solution, DEFAULT_SIGMA_SQ};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum FamilyName {
    #[default]
    Subsets,
    Kpath,
    Explicit,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceConfig {
    pub means: Vec<f64>,
    pub variances: Vec<f64>,
    pub reward_model: RewardKind,
    #[serde(rename = "K")]
    pub k: usize,
    #[serde(default)]
    pub family: FamilyName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path_sizes: Option<Vec<usize>>,
    /// 1-based item lists.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solutions: Option<Vec<Vec<usize>>>,
    pub sigma_bar_sq: f64,
    #[serde(default = "default_sigma_sq")]
    pub sigma_sq: f64,

    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(rename = "T", default, skip_serializing_if = "Option::is_none")]
    pub horizon: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algorithm: Option<Algorithm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reps: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega_mu: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega_v: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega_v_prime: Option<f64>,
}

fn default_sigma_sq() -> f64 {
    DEFAULT_SIGMA_SQ
}

fn cfg_err(path: &str, message: impl Into<String>) -> Error {
    Error::Config {
        path: path.to_string(),
        message: message.into(),
    }
}

/// Parses config text. `origin` names the source in error messages.
pub fn parse_instance_config_from(text: &str, origin: &str) -> Result<InstanceConfig> {
    toml::from_str(text).map_err(|e| cfg_err(origin, e.to_string().trim_end()))
}

pub fn parse_instance_config(text: &str) -> Result<InstanceConfig> {
    parse_instance_config_from(text, "<config>")
}

pub fn load_config(path: &Path) -> Result<InstanceConfig> {
    let origin = path.display().to_string();
    let text =
        std::fs::read_to_string(path).map_err(|e| cfg_err(&origin, format!("cannot read: {e}")))?;
    parse_instance_config_from(&text, &origin)
}

impl InstanceConfig {
    pub fn family_kind(&self) -> Result<FamilyKind> {
        match self.family {
            FamilyName::Subsets => Ok(FamilyKind::AllSubsetsUpToK),
            FamilyName::Kpath => match &self.path_sizes {
                Some(p) => Ok(FamilyKind::KPath {
                    path_sizes: p.clone(),
                }),
                None => Err(cfg_err("path_sizes", "family = \"kpath\" needs path_sizes")),
            },
            FamilyName::Explicit => {
                let Some(sols) = &self.solutions else {
                    return Err(cfg_err(
                        "solutions",
                        "family = \"explicit\" needs solutions",
                    ));
                };
                let sols = sols
                    .iter()
                    .map(|s| Solution::from_one_based(s))
                    .collect::<Result<Vec<_>>>()
                    .map_err(|e| cfg_err("solutions", e.to_string()))?;
                Ok(FamilyKind::Explicit(sols))
            }
        }
    }

    pub fn to_instance(&self) -> Result<Instance> {
        Instance::new(
            &self.means,
            &self.variances,
            self.reward_model,
            self.family_kind()?,
            self.k,
            self.sigma_bar_sq,
            self.sigma_sq,
        )
    }

    /// Confidence parameters if all three are given; an error if only some are.
    pub fn omegas(&self) -> Result<Option<Omegas>> {
        match (self.omega_mu, self.omega_v, self.omega_v_prime) {
            (None, None, None) => Ok(None),
            (Some(omega_mu), Some(omega_v), Some(omega_v_prime)) => Ok(Some(Omegas {
                omega_mu,
                omega_v,
                omega_v_prime,
            })),
            _ => Err(cfg_err(
                "omega_mu",
                "omega_mu, omega_v and omega_v_prime must be given together",
            )),
        }
    }

    /// A run configuration from the file's run keys, falling back to defaults.
    pub fn run_config(&self, default_horizon: u64) -> Result<RunConfig> {
        let inst = self.to_instance()?;
        let mut cfg = RunConfig::new(
            self.label.clone().unwrap_or_else(|| "config".into()),
            inst,
            self.algorithm.unwrap_or(Algorithm::PasComb),
            self.horizon.unwrap_or(default_horizon),
        );
        cfg.delta = self.delta.unwrap_or(REFERENCE_DELTA);
        cfg.epsilon = self.epsilon.unwrap_or(DEFAULT_EPSILON);
        cfg.replications = self.reps.unwrap_or(DEFAULT_REPS);
        cfg.omegas = self.omegas()?;
        Ok(cfg)
    }
}
