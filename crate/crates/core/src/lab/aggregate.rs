use serde::{Deserialize, Serialize};

use crate::engine::{Algorithm, Trace};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RegretKind {
    Pseudo,
    Realized,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AggregatePoint {
    pub t: u64,
    pub mean_regret: f64,
    pub se_regret: f64,
    pub mean_reward: f64,
    pub se_reward: f64,
    /// Mean over runs of the cumulative number of unsafe pulls.
    pub mean_unsafe: f64,
    /// `mean_unsafe / t`.
    pub violation_fraction: f64,
}

/// The four columns written to aggregate CSV files.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AggregateRow {
    pub t: u64,
    pub mean_regret: f64,
    pub se_regret: f64,
    pub violation_fraction: f64,
}

/// Mean and standard error of a sample; the error is 0 for one observation.
pub fn mean_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    if xs.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let m = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (m, 0.0);
    }
    let v = xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (n - 1.0);
    (m, (v / n).sqrt())
}

#[derive(Clone, Debug, Serialize)]
pub struct Aggregate {
    pub label: String,
    pub algorithm: Algorithm,
    pub horizon: u64,
    pub runs: usize,
    pub regret_kind: RegretKind,
    pub points: Vec<AggregatePoint>,
    pub any_violation: Vec<bool>,
    pub any_violation_rate: f64,
    /// Binomial standard error of the rate.
    pub any_violation_se: f64,
    pub mean_safeness_regret: f64,
    pub mean_suboptimality_regret: f64,
    pub mean_split_phases: f64,
}

impl Aggregate {
    /// Reduces traces in the order given (callers pass run-index order).
    pub fn from_traces(label: &str, traces: &[Trace], kind: RegretKind) -> Result<Self> {
        let first = traces
            .first()
            .ok_or_else(|| Error::InvalidParameter("no traces to aggregate".into()))?;
        let grid: Vec<u64> = first.checkpoints.iter().map(|c| c.t).collect();
        for tr in traces {
            if tr.checkpoints.len() != grid.len()
                || tr.checkpoints.iter().zip(&grid).any(|(c, &t)| c.t != t)
            {
                return Err(Error::CheckpointMismatch);
            }
        }
        let n = traces.len();
        let mut points = Vec::with_capacity(grid.len());
        let mut regrets = vec![0.0; n];
        let mut rewards = vec![0.0; n];
        for (j, &t) in grid.iter().enumerate() {
            let mut unsafe_sum = 0.0;
            for (r, tr) in traces.iter().enumerate() {
                let c = &tr.checkpoints[j];
                regrets[r] = match kind {
                    RegretKind::Pseudo => c.pseudo_regret,
                    RegretKind::Realized => c.realized_regret,
                };
                rewards[r] = c.reward;
                unsafe_sum += c.unsafe_pulls as f64;
            }
            let (mean_regret, se_regret) = mean_se(&regrets);
            let (mean_reward, se_reward) = mean_se(&rewards);
            let mean_unsafe = unsafe_sum / n as f64;
            points.push(AggregatePoint {
                t,
                mean_regret,
                se_regret,
                mean_reward,
                se_reward,
                mean_unsafe,
                violation_fraction: mean_unsafe / t as f64,
            });
        }
        let any_violation: Vec<bool> = traces.iter().map(|t| t.summary.any_violation()).collect();
        let rate = any_violation.iter().filter(|&&v| v).count() as f64 / n as f64;
        let per_run = |f: &dyn Fn(&Trace) -> f64| traces.iter().map(f).sum::<f64>() / n as f64;
        Ok(Aggregate {
            label: label.to_string(),
            algorithm: first.algorithm,
            horizon: first.horizon,
            runs: n,
            regret_kind: kind,
            points,
            any_violation,
            any_violation_rate: rate,
            any_violation_se: (rate * (1.0 - rate) / n as f64).sqrt(),
            mean_safeness_regret: per_run(&|t| t.summary.ledger.safeness),
            mean_suboptimality_regret: per_run(&|t| t.summary.ledger.suboptimality),
            mean_split_phases: per_run(&|t| t.summary.ledger.split_phases as f64),
        })
    }

    pub fn rows(&self) -> Vec<AggregateRow> {
        self.points
            .iter()
            .map(|p| AggregateRow {
                t: p.t,
                mean_regret: p.mean_regret,
                se_regret: p.se_regret,
                violation_fraction: p.violation_fraction,
            })
            .collect()
    }

    pub fn point_at(&self, t: u64) -> Option<&AggregatePoint> {
        self.points.iter().find(|p| p.t == t)
    }

    pub fn last(&self) -> &AggregatePoint {
        self.points
            .last()
            .expect("aggregate has at least one checkpoint")
    }

    /// Mean fraction of unsafe pulls among steps in `(t0, t1]`.
    pub fn violation_fraction_between(&self, t0: u64, t1: u64) -> Option<f64> {
        let u1 = self.point_at(t1)?.mean_unsafe;
        let u0 = if t0 == 0 {
            0.0
        } else {
            self.point_at(t0)?.mean_unsafe
        };
        (t1 > t0).then(|| (u1 - u0) / (t1 - t0) as f64)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiffPoint {
    pub t: u64,
    pub mean: f64,
    pub se: f64,
}

/// Pointwise difference of mean regret curves; standard errors add in quadrature.
pub fn additional_regret(pascomb: &Aggregate, baseline: &Aggregate) -> Result<Vec<DiffPoint>> {
    if pascomb.points.len() != baseline.points.len()
        || pascomb
            .points
            .iter()
            .zip(&baseline.points)
            .any(|(a, b)| a.t != b.t)
    {
        return Err(Error::CheckpointMismatch);
    }
    Ok(pascomb
        .points
        .iter()
        .zip(&baseline.points)
        .map(|(a, b)| DiffPoint {
            t: a.t,
            mean: a.mean_regret - b.mean_regret,
            se: (a.se_regret * a.se_regret + b.se_regret * b.se_regret).sqrt(),
        })
        .collect())
}

/// Average slopes of a series over its first and last quarter of `[0, T]`.
///
/// The series is taken to be 0 at t = 0; returns `None` when the quartile
/// times are not on the grid.
pub fn quartile_slopes(series: &[DiffPoint], horizon: u64) -> Option<(f64, f64)> {
    let at = |t: u64| series.iter().find(|p| p.t == t).map(|p| p.mean);
    let q1 = horizon.div_ceil(4);
    let q3 = (3 * horizon).div_ceil(4);
    let first = at(q1)? / q1 as f64;
    let last = (at(horizon)? - at(q3)?) / (horizon - q3) as f64;
    Some((first, last))
}

/// Run-level safety summary.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SafetyStats {
    pub per_step_violation_fraction: f64,
    /// 0 or 1 for a single trace; the rate for an aggregate.
    pub any_violation: f64,
    pub any_violation_se: f64,
}

pub fn trace_safety(trace: &Trace) -> SafetyStats {
    let s = &trace.summary;
    SafetyStats {
        per_step_violation_fraction: if s.steps == 0 {
            0.0
        } else {
            s.unsafe_pulls as f64 / s.steps as f64
        },
        any_violation: if s.any_violation() { 1.0 } else { 0.0 },
        any_violation_se: 0.0,
    }
}

pub fn aggregate_safety(agg: &Aggregate) -> SafetyStats {
    SafetyStats {
        per_step_violation_fraction: agg.last().violation_fraction,
        any_violation: agg.any_violation_rate,
        any_violation_se: agg.any_violation_se,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

/// Ordinary least squares of `ys` on `xs`.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> Option<LinearFit> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return None;
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let r_squared = if syy == 0.0 {
        1.0
    } else {
        sxy * sxy / (sxx * syy)
    };
    Some(LinearFit {
        slope,
        intercept: my - slope * mx,
        r_squared,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fit_exact_line() {
        let f = linear_fit(&[1.0, 2.0, 3.0], &[3.0, 5.0, 7.0]).unwrap();
        assert!((f.slope - 2.0).abs() < 1e-12);
        assert!((f.intercept - 1.0).abs() < 1e-12);
        assert!((f.r_squared - 1.0).abs() < 1e-12);
        assert!(linear_fit(&[1.0], &[1.0]).is_none());
    }

    #[test]
    fn mean_se_small_samples() {
        assert_eq!(mean_se(&[2.0]), (2.0, 0.0));
        let (m, se) = mean_se(&[1.0, 3.0]);
        assert_eq!(m, 2.0);
        assert!((se - 1.0).abs() < 1e-12);
    }
}
