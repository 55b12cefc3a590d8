use serde::Serialize;

use super::instance::Instance;
use super::partition::{classify, SafetyPartition, SolutionClass};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SolutionGaps {
    /// Δ_S = μ⋆ − μ_S (negative for risky solutions with a larger mean).
    pub mean_gap: f64,
    /// Δᵛ_S = |σ²_S − σ̄²|.
    pub var_gap: f64,
}

/// Per-item gap quantities. `None` marks a minimum or maximum over an empty set.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct ItemGaps {
    pub safe_suboptimal_min: Option<f64>,
    pub unsafe_suboptimal_min: Option<f64>,
    pub tension: Option<f64>,
    pub risky_var_min: Option<f64>,
    pub psi: Option<f64>,
    pub psi_prime: Option<f64>,
    pub phi: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct GapTable {
    pub horizon: u64,
    pub delta: f64,
    pub solutions: Vec<SolutionGaps>,
    pub items: Vec<ItemGaps>,
    /// Δᵛ_{S⋆}.
    pub optimal_var_gap: f64,
    /// Smallest Δᵛ_S over the whole family.
    pub min_var_gap: f64,
}

fn upd_min(slot: &mut Option<f64>, v: f64) {
    *slot = Some(slot.map_or(v, |s| s.min(v)));
}

fn upd_max(slot: &mut Option<f64>, v: f64) {
    *slot = Some(slot.map_or(v, |s| s.max(v)));
}

/// Classifies the instance and computes its gap table.
pub fn compute_gaps(
    instance: &Instance,
    horizon: u64,
    delta: f64,
) -> Result<(SafetyPartition, GapTable)> {
    let part = classify(instance)?;
    let table = GapTable::compute(instance, &part, horizon, delta)?;
    Ok((part, table))
}

impl GapTable {
    pub fn compute(
        instance: &Instance,
        part: &SafetyPartition,
        horizon: u64,
        delta: f64,
    ) -> Result<Self> {
        if horizon < 2 {
            return Err(Error::InvalidParameter(format!(
                "horizon must be at least 2, got {horizon}"
            )));
        }
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "delta must lie in (0, 1), got {delta}"
            )));
        }
        let fam = instance.family();
        let budget = instance.sigma_bar_sq();
        let ln_t = (horizon as f64).ln();
        let ln_t_delta = ln_t - delta.ln();
        let ln_inv_delta = -delta.ln();

        let solutions: Vec<SolutionGaps> = (0..fam.len())
            .map(|k| {
                let items = fam.items_of(k);
                SolutionGaps {
                    mean_gap: part.mu_star - instance.mean_of(items),
                    var_gap: (instance.var_of(items) - budget).abs(),
                }
            })
            .collect();

        let mut items = vec![ItemGaps::default(); instance.num_items()];
        for k in 0..fam.len() {
            let SolutionGaps {
                mean_gap: d,
                var_gap: dv,
            } = solutions[k];
            for &i in fam.items_of(k) {
                let g = &mut items[i];
                match part.class_of(k) {
                    SolutionClass::Optimal => {}
                    SolutionClass::SafeSuboptimal => {
                        upd_min(&mut g.safe_suboptimal_min, d);
                        let a = ln_t / (d * d);
                        upd_max(&mut g.psi, a.min(9.0 * ln_t_delta / (dv * dv)));
                        upd_max(&mut g.psi_prime, a.min(9.0 * ln_inv_delta / (dv * dv)));
                    }
                    SolutionClass::UnsafeSuboptimal => {
                        upd_min(&mut g.unsafe_suboptimal_min, d);
                        let c = d / d.max(dv / 3.0);
                        upd_max(&mut g.tension, c * c);
                        upd_max(&mut g.phi, (ln_t / (d * d)).min(9.0 * ln_t / (dv * dv)));
                    }
                    SolutionClass::Risky => upd_min(&mut g.risky_var_min, dv),
                }
            }
        }
        let min_var_gap = solutions
            .iter()
            .map(|s| s.var_gap)
            .fold(f64::INFINITY, f64::min);
        Ok(GapTable {
            horizon,
            delta,
            optimal_var_gap: solutions[part.optimal].var_gap,
            min_var_gap,
            solutions,
            items,
        })
    }
}
