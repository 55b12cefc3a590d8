use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::confidence::{default_omegas, LilConfig, Omegas, DEFAULT_EPSILON};
use crate::engine::Algorithm;
use crate::error::{Error, Result};
use crate::model::{FamilyKind, Instance, RewardKind};

pub const REFERENCE_MEANS: [f64; 10] = [0.5, 0.45, 0.4, 0.35, 0.3, 0.3, 0.3, 0.3, 0.3, 0.3];
pub const SET1_VARIANCES: [f64; 10] = [0.24, 0.24, 0.04, 0.01, 0.01, 0.01, 0.01, 0.01, 0.01, 0.01];
pub const SET2_VARIANCES: [f64; 10] = [0.01; 10];
pub const REFERENCE_K: usize = 3;
pub const REFERENCE_SIGMA_SQ: f64 = 0.25;
pub const REFERENCE_DELTA: f64 = 0.05;

pub const DEFAULT_REPS: usize = 50;
pub const SAFETY_REPS: usize = 200;

pub fn reference_set1(sigma_bar_sq: f64) -> Result<Instance> {
    table1(&SET1_VARIANCES, sigma_bar_sq)
}

pub fn reference_set2(sigma_bar_sq: f64) -> Result<Instance> {
    table1(&SET2_VARIANCES, sigma_bar_sq)
}

fn table1(vars: &[f64], sigma_bar_sq: f64) -> Result<Instance> {
    Instance::new(
        &REFERENCE_MEANS,
        vars,
        RewardKind::Beta,
        FamilyKind::AllSubsetsUpToK,
        REFERENCE_K,
        sigma_bar_sq,
        REFERENCE_SIGMA_SQ,
    )
}

/// Budgets `0.14·1.2^k` for k = 0..9.
pub fn exp3_grid() -> Vec<f64> {
    (0..10).map(|k| 0.14 * 1.2f64.powi(k)).collect()
}

/// Everything needed to reproduce a batch of runs.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub label: String,
    pub instance: Arc<Instance>,
    pub algorithm: Algorithm,
    pub horizon: u64,
    pub delta: f64,
    pub epsilon: f64,
    pub omegas: Option<Omegas>,
    pub master_seed: u64,
    pub replications: usize,
}

impl RunConfig {
    pub fn new(
        label: impl Into<String>,
        instance: Instance,
        algorithm: Algorithm,
        horizon: u64,
    ) -> Self {
        RunConfig {
            label: label.into(),
            instance: Arc::new(instance),
            algorithm,
            horizon,
            delta: REFERENCE_DELTA,
            epsilon: DEFAULT_EPSILON,
            omegas: None,
            master_seed: 0,
            replications: DEFAULT_REPS,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.horizon == 0 {
            return Err(Error::InvalidParameter(
                "horizon T must be at least 1".into(),
            ));
        }
        if self.replications == 0 {
            return Err(Error::InvalidParameter(
                "replications must be at least 1".into(),
            ));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "delta must lie in (0, 1), got {}",
                self.delta
            )));
        }
        if !self.instance.is_simulable() {
            return Err(Error::InvalidParameter(
                "instance carries moments only and cannot be simulated".into(),
            ));
        }
        self.lil_config().map(|_| ())
    }

    /// The confidence configuration: overrides if given, else the default schedule.
    pub fn lil_config(&self) -> Result<LilConfig> {
        let w = match self.omegas {
            Some(w) => w,
            None => default_omegas(self.horizon, self.delta)?,
        };
        LilConfig::new(self.epsilon, w)
    }

    pub fn echo(&self) -> ConfigEcho {
        ConfigEcho {
            label: self.label.clone(),
            algorithm: self.algorithm,
            sigma_bar_sq: self.instance.sigma_bar_sq(),
            sigma_sq: self.instance.sigma_sq(),
            horizon: self.horizon,
            delta: self.delta,
            epsilon: self.epsilon,
            omegas: self.lil_config().ok().map(|c| c.omegas()),
            master_seed: self.master_seed,
            replications: self.replications,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub label: String,
    pub algorithm: Algorithm,
    pub sigma_bar_sq: f64,
    pub sigma_sq: f64,
    pub horizon: u64,
    pub delta: f64,
    pub epsilon: f64,
    pub omegas: Option<Omegas>,
    pub master_seed: u64,
    pub replications: usize,
}

/// Default horizon of each experiment.
pub fn default_horizon(id: u32) -> u64 {
    match id {
        2 => 100_000,
        _ => 200_000,
    }
}

/// Run configurations of experiment 1, 2 or 3 on the reference items.
pub fn experiment_preset(id: u32) -> Result<Vec<RunConfig>> {
    let t = default_horizon(id);
    let cfgs = match id {
        1 => vec![
            RunConfig::new("pascomb@0.6", reference_set1(0.6)?, Algorithm::PasComb, t),
            RunConfig::new(
                "pascomb@0.751",
                reference_set1(0.751)?,
                Algorithm::PasComb,
                t,
            ),
            RunConfig::new("combucb1", reference_set1(0.751)?, Algorithm::CombUcb1, t),
        ],
        2 => vec![
            RunConfig::new("pascomb@0.4", reference_set1(0.4)?, Algorithm::PasComb, t),
            RunConfig::new("combucb1@0.4", reference_set1(0.4)?, Algorithm::CombUcb1, t),
        ],
        3 => {
            let grid = exp3_grid();
            let mut v = Vec::with_capacity(grid.len() + 1);
            for (k, &b) in grid.iter().enumerate() {
                v.push(RunConfig::new(
                    format!("pascomb@k={k}"),
                    reference_set2(b)?,
                    Algorithm::PasComb,
                    t,
                ));
            }
            let last = *grid.last().expect("grid is nonempty");
            v.push(RunConfig::new(
                "combucb1",
                reference_set2(last)?,
                Algorithm::CombUcb1,
                t,
            ));
            v
        }
        _ => {
            return Err(Error::InvalidParameter(format!(
                "experiment id must be 1, 2 or 3, got {id}"
            )))
        }
    };
    Ok(cfgs)
}
