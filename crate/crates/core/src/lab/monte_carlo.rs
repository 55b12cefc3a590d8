use rayon::prelude::*;

use super::aggregate::{Aggregate, RegretKind};
use super::presets::RunConfig;
use crate::engine::{run_algorithm, run_seed, Environments, RunOptions, Trace, TraceMode};
use crate::error::{Error, Result};

/// One replication; deterministic in `(master_seed, run_index)`.
pub fn simulate_run(cfg: &RunConfig, run_index: u64, mode: TraceMode) -> Result<Trace> {
    cfg.validate()?;
    let mut envs = Environments::new(&cfg.instance, run_seed(cfg.master_seed, run_index))?;
    let opts = RunOptions {
        horizon: cfg.horizon,
        lil: cfg.lil_config()?,
        mode,
        run_id: run_index,
    };
    run_algorithm(cfg.algorithm, &cfg.instance, &mut envs, &opts)
}

/// All replications, returned in run-index order whatever the pool size.
pub fn collect_traces(cfg: &RunConfig, parallelism: usize, mode: TraceMode) -> Result<Vec<Trace>> {
    cfg.validate()?;
    let n = cfg.replications as u64;
    if parallelism <= 1 {
        return (0..n).map(|r| simulate_run(cfg, r, mode)).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(parallelism)
        .build()
        .map_err(|e| Error::Runtime(format!("cannot start worker pool: {e}")))?;
    pool.install(|| {
        (0..n)
            .into_par_iter()
            .map(|r| simulate_run(cfg, r, mode))
            .collect()
    })
}

/// Runs every replication in summary mode and aggregates pseudo-regret.
pub fn monte_carlo(cfg: &RunConfig, parallelism: usize) -> Result<Aggregate> {
    let traces = collect_traces(cfg, parallelism, TraceMode::Summary)?;
    Aggregate::from_traces(&cfg.label, &traces, RegretKind::Pseudo)
}
