use serde::Serialize;

use super::aggregate::{
    additional_regret, linear_fit, quartile_slopes, Aggregate, DiffPoint, LinearFit,
};
use super::monte_carlo::monte_carlo;
use super::presets::{experiment_preset, ConfigEcho};
use crate::engine::Algorithm;
use crate::error::Result;
use crate::model::compute_gaps;

#[derive(Clone, Copy, Debug)]
pub struct ExperimentOptions {
    pub master_seed: u64,
    pub parallelism: usize,
    pub horizon: Option<u64>,
    pub replications: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunSummaryEntry {
    pub config: ConfigEcho,
    pub any_violation_rate: f64,
    pub any_violation_se: f64,
    pub final_mean_regret: f64,
    pub final_se_regret: f64,
    pub final_mean_reward: f64,
    pub final_violation_fraction: f64,
    pub mean_safeness_regret: f64,
    pub mean_split_phases: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct AdditionalSeries {
    pub label: String,
    pub baseline: String,
    /// Δᵛ of the optimal solution for this configuration.
    pub optimal_var_gap: f64,
    pub final_mean: f64,
    pub final_se: f64,
    pub first_quartile_slope: Option<f64>,
    pub last_quartile_slope: Option<f64>,
    #[serde(skip)]
    pub series: Vec<DiffPoint>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentReport {
    pub id: u32,
    pub runs: Vec<RunSummaryEntry>,
    pub additional: Vec<AdditionalSeries>,
    /// Final additional regret against 1/(Δᵛ)² (experiment 3).
    pub fit: Option<LinearFit>,
    #[serde(skip)]
    pub aggregates: Vec<Aggregate>,
}

/// Runs one of the preset experiments. All configurations share the master
/// seed, so run `r` of each sees the same per-run seed.
pub fn run_experiment(id: u32, opts: &ExperimentOptions) -> Result<ExperimentReport> {
    let mut cfgs = experiment_preset(id)?;
    for c in &mut cfgs {
        c.master_seed = opts.master_seed;
        if let Some(t) = opts.horizon {
            c.horizon = t;
        }
        if let Some(n) = opts.replications {
            c.replications = n;
        }
        c.validate()?;
    }
    let mut aggregates = Vec::with_capacity(cfgs.len());
    let mut runs = Vec::with_capacity(cfgs.len());
    for c in &cfgs {
        log::info!(
            "experiment {id}: {} ({} runs, T = {})",
            c.label,
            c.replications,
            c.horizon
        );
        let agg = monte_carlo(c, opts.parallelism)?;
        let last = *agg.last();
        runs.push(RunSummaryEntry {
            config: c.echo(),
            any_violation_rate: agg.any_violation_rate,
            any_violation_se: agg.any_violation_se,
            final_mean_regret: last.mean_regret,
            final_se_regret: last.se_regret,
            final_mean_reward: last.mean_reward,
            final_violation_fraction: last.violation_fraction,
            mean_safeness_regret: agg.mean_safeness_regret,
            mean_split_phases: agg.mean_split_phases,
        });
        aggregates.push(agg);
    }

    let base = cfgs
        .iter()
        .position(|c| c.algorithm == Algorithm::CombUcb1)
        .expect("every preset has a baseline");
    let mut additional = Vec::new();
    for (k, c) in cfgs.iter().enumerate() {
        if c.algorithm != Algorithm::PasComb {
            continue;
        }
        let series = additional_regret(&aggregates[k], &aggregates[base])?;
        let (_, gaps) = compute_gaps(&c.instance, c.horizon.max(2), c.delta)?;
        let slopes = quartile_slopes(&series, c.horizon);
        let fin = *series.last().expect("nonempty series");
        additional.push(AdditionalSeries {
            label: c.label.clone(),
            baseline: cfgs[base].label.clone(),
            optimal_var_gap: gaps.optimal_var_gap,
            final_mean: fin.mean,
            final_se: fin.se,
            first_quartile_slope: slopes.map(|s| s.0),
            last_quartile_slope: slopes.map(|s| s.1),
            series,
        });
    }

    let fit = if id == 3 {
        let xs: Vec<f64> = additional
            .iter()
            .map(|a| 1.0 / (a.optimal_var_gap * a.optimal_var_gap))
            .collect();
        let ys: Vec<f64> = additional.iter().map(|a| a.final_mean).collect();
        linear_fit(&xs, &ys)
    } else {
        None
    };
    Ok(ExperimentReport {
        id,
        runs,
        additional,
        fit,
        aggregates,
    })
}
