use serde::{Deserialize, Serialize};

use crate::model::Solution;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    #[serde(alias = "pascombucb")]
    PasComb,
    CombUcb1,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::PasComb => "pascomb",
            Algorithm::CombUcb1 => "combucb1",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pascomb" | "pascombucb" => Some(Algorithm::PasComb),
            "combucb1" => Some(Algorithm::CombUcb1),
            _ => None,
        }
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TraceMode {
    /// Every step and phase row.
    Full,
    /// Checkpoints and ledgers only.
    Summary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PhaseKind {
    Init,
    Main,
    /// The horizon cut the phase short.
    Truncated,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StepRow {
    pub t: u64,
    pub phase: u64,
    pub subsolution: Solution,
    pub reward: f64,
    pub pseudo_increment: f64,
    pub realized_increment: f64,
    pub pseudo_regret_cum: f64,
    pub realized_regret_cum: f64,
    pub unsafe_pull: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PhaseRow {
    pub phase: u64,
    pub kind: PhaseKind,
    pub selected: Solution,
    /// Sub-solutions produced by the split, before clamping to the horizon.
    pub planned: usize,
    pub pulled: usize,
    /// Uᵛ of the selected solution at selection time.
    pub u_var: f64,
    /// Event flags `Uᵛ > r·σ̄²` for r = 1..Q−1.
    pub events: Vec<bool>,
    /// |Σ_r (μ⋆ − μ_{A_{p,r}}) − (Δ_{A_p} + μ⋆(n_p − 1))|; zero for init phases.
    pub identity_residual: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub t: u64,
    pub pseudo_regret: f64,
    pub realized_regret: f64,
    pub reward: f64,
    pub unsafe_pulls: u64,
}

/// Regret decomposition accumulated over phases.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RegretLedger {
    pub init_regret: f64,
    /// Σ Δ_{A_p} over completed main phases.
    pub suboptimality: f64,
    /// Σ μ⋆(n_p − 1) over completed main phases.
    pub safeness: f64,
    pub truncated_regret: f64,
    /// Number of phases with `Uᵛ_{A_p} > r·σ̄²`, for r = 1..Q−1.
    pub event_counts: Vec<u64>,
    pub split_phases: u64,
    pub max_identity_residual: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub steps: u64,
    pub phases: u64,
    pub init_phases: u64,
    pub unsafe_pulls: u64,
    pub first_violation: Option<u64>,
    pub pseudo_regret: f64,
    pub realized_regret: f64,
    pub reward: f64,
    pub ledger: RegretLedger,
}

impl RunSummary {
    pub fn any_violation(&self) -> bool {
        self.unsafe_pulls > 0
    }
}

#[derive(Clone, Debug)]
pub struct Trace {
    pub run_id: u64,
    pub algorithm: Algorithm,
    pub horizon: u64,
    pub q: usize,
    pub big_q: usize,
    pub steps: Vec<StepRow>,
    pub phases: Vec<PhaseRow>,
    pub checkpoints: Vec<Checkpoint>,
    pub summary: RunSummary,
}

/// 100 log-spaced times in [1, T] together with the quartiles of T.
pub fn checkpoint_grid(horizon: u64) -> Vec<u64> {
    if horizon == 0 {
        return Vec::new();
    }
    let mut g: Vec<u64> = Vec::with_capacity(104);
    let lt = (horizon as f64).ln();
    for k in 0..100 {
        let t = (lt * k as f64 / 99.0).exp().round() as u64;
        g.push(t.clamp(1, horizon));
    }
    for num in 1..=4u64 {
        g.push((horizon * num).div_ceil(4).max(1));
    }
    g.sort_unstable();
    g.dedup();
    g
}

/// Accumulates step and phase records for one run.
pub(crate) struct Recorder {
    mode: TraceMode,
    grid: Vec<u64>,
    next_cp: usize,
    t: u64,
    pseudo: f64,
    realized: f64,
    reward: f64,
    steps: Vec<StepRow>,
    phases: Vec<PhaseRow>,
    checkpoints: Vec<Checkpoint>,
    summary: RunSummary,
}

impl Recorder {
    pub fn new(mode: TraceMode, horizon: u64, n_events: usize) -> Self {
        let summary = RunSummary {
            ledger: RegretLedger {
                event_counts: vec![0; n_events],
                ..Default::default()
            },
            ..Default::default()
        };
        Recorder {
            mode,
            grid: checkpoint_grid(horizon),
            next_cp: 0,
            t: 0,
            pseudo: 0.0,
            realized: 0.0,
            reward: 0.0,
            steps: Vec::new(),
            phases: Vec::new(),
            checkpoints: Vec::new(),
            summary,
        }
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    #[allow(clippy::too_many_arguments)]
    pub fn step(
        &mut self,
        phase: u64,
        items: &[usize],
        reward: f64,
        pseudo_inc: f64,
        realized_inc: f64,
        unsafe_pull: bool,
    ) {
        self.t += 1;
        self.pseudo += pseudo_inc;
        self.realized += realized_inc;
        self.reward += reward;
        if unsafe_pull {
            self.summary.unsafe_pulls += 1;
            self.summary.first_violation.get_or_insert(self.t);
        }
        if self.mode == TraceMode::Full {
            self.steps.push(StepRow {
                t: self.t,
                phase,
                subsolution: Solution::new(items.to_vec()),
                reward,
                pseudo_increment: pseudo_inc,
                realized_increment: realized_inc,
                pseudo_regret_cum: self.pseudo,
                realized_regret_cum: self.realized,
                unsafe_pull,
            });
        }
        while self.next_cp < self.grid.len() && self.grid[self.next_cp] == self.t {
            self.checkpoints.push(Checkpoint {
                t: self.t,
                pseudo_regret: self.pseudo,
                realized_regret: self.realized,
                reward: self.reward,
                unsafe_pulls: self.summary.unsafe_pulls,
            });
            self.next_cp += 1;
        }
    }

    /// Records a finished phase; `regret` is the summed pseudo-regret of its steps.
    pub fn phase(&mut self, mut row: PhaseRow, regret: f64, mean_gap: f64, mu_star: f64) {
        self.summary.phases += 1;
        let ledger = &mut self.summary.ledger;
        match row.kind {
            PhaseKind::Init => {
                self.summary.init_phases += 1;
                ledger.init_regret += regret;
            }
            PhaseKind::Main => {
                let safeness = mu_star * (row.pulled as f64 - 1.0);
                ledger.suboptimality += mean_gap;
                ledger.safeness += safeness;
                row.identity_residual = (regret - (mean_gap + safeness)).abs();
                ledger.max_identity_residual =
                    ledger.max_identity_residual.max(row.identity_residual);
            }
            PhaseKind::Truncated => ledger.truncated_regret += regret,
        }
        if row.pulled > 1 {
            ledger.split_phases += 1;
        }
        for (c, &e) in ledger.event_counts.iter_mut().zip(&row.events) {
            *c += e as u64;
        }
        if self.mode == TraceMode::Full {
            self.phases.push(row);
        }
    }

    pub fn finish(
        mut self,
        run_id: u64,
        algorithm: Algorithm,
        horizon: u64,
        q: usize,
        big_q: usize,
    ) -> Trace {
        self.summary.steps = self.t;
        self.summary.pseudo_regret = self.pseudo;
        self.summary.realized_regret = self.realized;
        self.summary.reward = self.reward;
        Trace {
            run_id,
            algorithm,
            horizon,
            q,
            big_q,
            steps: self.steps,
            phases: self.phases,
            checkpoints: self.checkpoints,
            summary: self.summary,
        }
    }
}
