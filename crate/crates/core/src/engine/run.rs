use super::env::Environments;
use super::oracle::{init_select, oracle_select, unconstrained_select};
use super::split::{absolutely_safe_threshold, split_into};
use super::trace::{Algorithm, PhaseKind, PhaseRow, Recorder, Trace, TraceMode};
use crate::confidence::{item_bounds_unchecked, ItemStats, LilConfig};
use crate::error::{Error, Result};
use crate::model::{classify, Instance, Solution};

#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    pub horizon: u64,
    pub lil: LilConfig,
    pub mode: TraceMode,
    pub run_id: u64,
}

/// Per-item statistics with cached bounds.
struct Learner {
    cfg: LilConfig,
    sigma_sq: f64,
    stats: Vec<ItemStats>,
    u_mu: Vec<f64>,
    u_var: Vec<f64>,
    l_var: Vec<f64>,
}

impl Learner {
    fn new(n: usize, cfg: LilConfig, sigma_sq: f64) -> Self {
        Learner {
            cfg,
            sigma_sq,
            stats: vec![ItemStats::new(); n],
            u_mu: vec![f64::INFINITY; n],
            u_var: vec![sigma_sq; n],
            l_var: vec![0.0; n],
        }
    }

    fn observe(&mut self, obs: &[(usize, f64)]) {
        for &(i, w) in obs {
            self.stats[i].push(w);
        }
        for &(i, _) in obs {
            let b = item_bounds_unchecked(&self.stats[i], &self.cfg, self.sigma_sq);
            self.u_mu[i] = b.u_mu;
            self.u_var[i] = b.u_var;
            self.l_var[i] = b.l_var;
        }
    }

    fn pulls(&self) -> Vec<u64> {
        self.stats.iter().map(ItemStats::pulls).collect()
    }
}

/// Pulls sub-solutions against the environments and feeds the recorder.
struct World<'a> {
    inst: &'a Instance,
    envs: &'a mut Environments,
    star: Vec<usize>,
    mu_star: f64,
    rec: Recorder,
}

impl World<'_> {
    /// One time step on sorted `items`. Returns the pseudo-regret increment.
    fn pull(&mut self, phase: u64, items: &[usize], obs: &mut Vec<(usize, f64)>) -> f64 {
        let base = obs.len();
        let mut reward = 0.0;
        for &i in items {
            let w = self.envs.observed.sample(i);
            obs.push((i, w));
            reward += w;
        }
        // Items shared with S⋆ reuse the observed draw.
        let mut star_reward = 0.0;
        for &i in &self.star {
            star_reward += match items.binary_search(&i) {
                Ok(pos) => obs[base + pos].1,
                Err(_) => self.envs.reference.sample(i),
            };
        }
        let pseudo = self.mu_star - self.inst.mean_of(items);
        let unsafe_pull = self.inst.is_unsafe(items);
        self.rec.step(
            phase,
            items,
            reward,
            pseudo,
            star_reward - reward,
            unsafe_pull,
        );
        pseudo
    }

    fn init_phase(
        &mut self,
        learner: &mut Learner,
        phase: u64,
        k: usize,
        obs: &mut Vec<(usize, f64)>,
    ) {
        let items = self.inst.family().items_of(k);
        let u_var: f64 = items.iter().map(|&i| learner.u_var[i]).sum();
        obs.clear();
        let regret = self.pull(phase, items, obs);
        learner.observe(obs);
        let row = PhaseRow {
            phase,
            kind: PhaseKind::Init,
            selected: Solution::new(items.to_vec()),
            planned: 1,
            pulled: 1,
            u_var,
            events: Vec::new(),
            identity_residual: 0.0,
        };
        self.rec.phase(row, regret, 0.0, self.mu_star);
    }
}

fn setup<'a>(
    instance: &'a Instance,
    envs: &'a mut Environments,
    opts: &RunOptions,
    n_events: usize,
) -> Result<World<'a>> {
    if opts.horizon == 0 {
        return Err(Error::InvalidParameter("horizon must be at least 1".into()));
    }
    let part = classify(instance)?;
    Ok(World {
        inst: instance,
        envs,
        star: part.optimal_solution.items().to_vec(),
        mu_star: part.mu_star,
        rec: Recorder::new(opts.mode, opts.horizon, n_events),
    })
}

/// PASCombUCB: safe initialization, then optimistic selection over the
/// possibly safe set with Greedy-Split safeness checking.
pub fn pascomb_run(
    instance: &Instance,
    envs: &mut Environments,
    opts: &RunOptions,
) -> Result<Trace> {
    let (q, big_q) = absolutely_safe_threshold(instance);
    let mut w = setup(instance, envs, opts, big_q.saturating_sub(1))?;
    let fam = instance.family();
    let budget = instance.sigma_bar_sq();
    let horizon = opts.horizon;
    let mut learner = Learner::new(instance.num_items(), opts.lil, instance.sigma_sq());
    let mut obs = Vec::with_capacity(instance.k());
    let mut phase = 0u64;

    while w.rec.t() < horizon {
        let Some(k) = init_select(fam, &learner.pulls(), 2, q) else {
            break;
        };
        phase += 1;
        w.init_phase(&mut learner, phase, k, &mut obs);
    }

    let mut parts: Vec<Vec<usize>> = Vec::new();
    while w.rec.t() < horizon {
        phase += 1;
        let k = oracle_select(fam, &learner.u_mu, &learner.l_var, budget).ok_or_else(|| {
            Error::Runtime(format!("possibly safe set is empty at phase {phase}"))
        })?;
        let items = fam.items_of(k);
        let u_var: f64 = items.iter().map(|&i| learner.u_var[i]).sum();
        split_into(items, &learner.u_var, budget, &mut parts);
        let planned = parts.len();
        let n = planned.min((horizon - w.rec.t()) as usize);
        obs.clear();
        let mut regret = 0.0;
        for part in &parts[..n] {
            regret += w.pull(phase, part, &mut obs);
        }
        learner.observe(&obs);
        let row = PhaseRow {
            phase,
            kind: if n < planned {
                PhaseKind::Truncated
            } else {
                PhaseKind::Main
            },
            selected: Solution::new(items.to_vec()),
            planned,
            pulled: n,
            u_var,
            events: (1..big_q).map(|r| u_var > r as f64 * budget).collect(),
            identity_residual: 0.0,
        };
        let gap = w.mu_star - instance.mean_of(items);
        w.rec.phase(row, regret, gap, w.mu_star);
    }
    Ok(w.rec
        .finish(opts.run_id, Algorithm::PasComb, horizon, q, big_q))
}

/// CombUCB1 with the same LIL mean radius and no safety logic.
pub fn combucb1_run(
    instance: &Instance,
    envs: &mut Environments,
    opts: &RunOptions,
) -> Result<Trace> {
    let (q, big_q) = absolutely_safe_threshold(instance);
    let mut w = setup(instance, envs, opts, 0)?;
    let fam = instance.family();
    let horizon = opts.horizon;
    let mut learner = Learner::new(instance.num_items(), opts.lil, instance.sigma_sq());
    let mut obs = Vec::with_capacity(instance.k());
    let mut phase = 0u64;

    while w.rec.t() < horizon {
        let Some(k) = init_select(fam, &learner.pulls(), 1, instance.k()) else {
            break;
        };
        phase += 1;
        w.init_phase(&mut learner, phase, k, &mut obs);
    }
    while w.rec.t() < horizon {
        phase += 1;
        let k = unconstrained_select(fam, &learner.u_mu);
        let items = fam.items_of(k);
        let u_var: f64 = items.iter().map(|&i| learner.u_var[i]).sum();
        obs.clear();
        let regret = w.pull(phase, items, &mut obs);
        learner.observe(&obs);
        let row = PhaseRow {
            phase,
            kind: PhaseKind::Main,
            selected: Solution::new(items.to_vec()),
            planned: 1,
            pulled: 1,
            u_var,
            events: Vec::new(),
            identity_residual: 0.0,
        };
        let gap = w.mu_star - instance.mean_of(items);
        w.rec.phase(row, regret, gap, w.mu_star);
    }
    Ok(w.rec
        .finish(opts.run_id, Algorithm::CombUcb1, horizon, q, big_q))
}

/// Dispatches on the algorithm.
pub fn run_algorithm(
    algorithm: Algorithm,
    instance: &Instance,
    envs: &mut Environments,
    opts: &RunOptions,
) -> Result<Trace> {
    match algorithm {
        Algorithm::PasComb => pascomb_run(instance, envs, opts),
        Algorithm::CombUcb1 => combucb1_run(instance, envs, opts),
    }
}
