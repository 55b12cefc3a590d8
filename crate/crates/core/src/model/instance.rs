use serde::{Deserialize, Serialize};

use super::family::{FamilyKind, SolutionFamily};
use super::solution::Solution;
use crate::error::{Error, Result};

/// Tolerance used when comparing moments that should coincide exactly.
pub const MOMENT_TOL: f64 = 1e-12;

pub const DEFAULT_SIGMA_SQ: f64 = 0.25;

/// Requested reward family for every item of an instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RewardKind {
    Beta,
    Bernoulli,
    PointMass,
    /// Moments only. Usable for analysis and bounds; cannot be simulated.
    Moments,
}

/// Concrete per-item distribution after resolving degenerate moments.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum ItemDistribution {
    Beta { alpha: f64, beta: f64 },
    Bernoulli { p: f64 },
    PointMass { value: f64 },
    Moments,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Item {
    pub mean: f64,
    pub variance: f64,
    pub distribution: ItemDistribution,
}

/// Beta parameters with the requested mean and variance.
pub fn beta_params_from_moments(mu: f64, var: f64) -> Result<(f64, f64)> {
    if !(mu > 0.0 && mu < 1.0) || !(var > 0.0) || var >= mu * (1.0 - mu) {
        return Err(Error::InfeasibleMoments {
            mean: mu,
            variance: var,
        });
    }
    let alpha = mu * (mu * (1.0 - mu) / var - 1.0);
    let beta = alpha * (1.0 / mu - 1.0);
    Ok((alpha, beta))
}

fn resolve(kind: RewardKind, mean: f64, var: f64) -> Result<ItemDistribution> {
    let bern = mean * (1.0 - mean);
    let infeasible = || Error::InfeasibleMoments {
        mean,
        variance: var,
    };
    match kind {
        RewardKind::Moments => Ok(ItemDistribution::Moments),
        RewardKind::PointMass => {
            if var.abs() > MOMENT_TOL {
                return Err(infeasible());
            }
            Ok(ItemDistribution::PointMass { value: mean })
        }
        RewardKind::Bernoulli => {
            if (var - bern).abs() > 1e-9 {
                return Err(infeasible());
            }
            Ok(ItemDistribution::Bernoulli { p: mean })
        }
        RewardKind::Beta => {
            if var <= MOMENT_TOL {
                Ok(ItemDistribution::PointMass { value: mean })
            } else if var > bern + MOMENT_TOL {
                Err(infeasible())
            } else if bern - var <= MOMENT_TOL {
                Ok(ItemDistribution::Bernoulli { p: mean })
            } else {
                let (alpha, beta) = beta_params_from_moments(mean, var)?;
                Ok(ItemDistribution::Beta { alpha, beta })
            }
        }
    }
}

/// A problem instance: items, family, variance budget and sub-Gaussian proxy.
#[derive(Clone, Debug)]
pub struct Instance {
    items: Vec<Item>,
    reward_kind: RewardKind,
    family: SolutionFamily,
    sigma_bar_sq: f64,
    sigma_sq: f64,
    warnings: Vec<String>,
}

impl Instance {
    pub fn new(
        means: &[f64],
        variances: &[f64],
        reward_kind: RewardKind,
        family: FamilyKind,
        k: usize,
        sigma_bar_sq: f64,
        sigma_sq: f64,
    ) -> Result<Self> {
        if means.is_empty() {
            return Err(Error::InvalidInstance("need at least one item".into()));
        }
        if means.len() != variances.len() {
            return Err(Error::InvalidInstance(format!(
                "{} means but {} variances",
                means.len(),
                variances.len()
            )));
        }
        let mut items = Vec::with_capacity(means.len());
        for (i, (&m, &v)) in means.iter().zip(variances).enumerate() {
            if !(0.0..=1.0).contains(&m) {
                return Err(Error::InvalidInstance(format!(
                    "mean of item {} is {m}, outside [0, 1]",
                    i + 1
                )));
            }
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidInstance(format!(
                    "variance of item {} is {v}",
                    i + 1
                )));
            }
            items.push(Item {
                mean: m,
                variance: v,
                distribution: resolve(reward_kind, m, v)?,
            });
        }
        if !(sigma_bar_sq.is_finite() && sigma_bar_sq > 0.0) {
            return Err(Error::InvalidInstance(format!(
                "sigma_bar_sq must be positive, got {sigma_bar_sq}"
            )));
        }
        if !(sigma_sq.is_finite() && sigma_sq > 0.0) {
            return Err(Error::InvalidInstance(format!(
                "sigma_sq must be positive, got {sigma_sq}"
            )));
        }
        let family = SolutionFamily::new(family, means.len(), k)?;

        let mut warnings = Vec::new();
        if sigma_bar_sq <= sigma_sq {
            warnings.push(format!(
                "sigma_bar_sq = {sigma_bar_sq} does not exceed sigma_sq = {sigma_sq}; no solution is absolutely safe"
            ));
        }
        if k < 2 {
            warnings.push("K < 2: the problem reduces to a single-item bandit".into());
        }
        if let Some((i, it)) = items
            .iter()
            .enumerate()
            .find(|(_, it)| it.variance > sigma_sq)
        {
            warnings.push(format!(
                "variance {} of item {} exceeds sigma_sq = {sigma_sq}",
                it.variance,
                i + 1
            ));
        }

        let inst = Instance {
            items,
            reward_kind,
            family,
            sigma_bar_sq,
            sigma_sq,
            warnings,
        };
        for k in 0..inst.family.len() {
            let v = inst.var_of(inst.family.items_of(k));
            if (v - sigma_bar_sq).abs() <= MOMENT_TOL {
                return Err(Error::InvalidInstance(format!(
                    "solution {} has variance exactly equal to the budget {sigma_bar_sq}",
                    inst.family.get(k)
                )));
            }
        }
        for w in &inst.warnings {
            log::warn!("{w}");
        }
        Ok(inst)
    }

    /// The same instance with a different variance budget.
    pub fn with_sigma_bar_sq(&self, sigma_bar_sq: f64) -> Result<Self> {
        let means: Vec<f64> = self.items.iter().map(|i| i.mean).collect();
        let vars: Vec<f64> = self.items.iter().map(|i| i.variance).collect();
        Instance::new(
            &means,
            &vars,
            self.reward_kind,
            self.family.kind().clone(),
            self.family.max_size(),
            sigma_bar_sq,
            self.sigma_sq,
        )
    }

    pub fn num_items(&self) -> usize {
        self.items.len()
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }

    pub fn reward_kind(&self) -> RewardKind {
        self.reward_kind
    }

    pub fn family(&self) -> &SolutionFamily {
        &self.family
    }

    pub fn k(&self) -> usize {
        self.family.max_size()
    }

    pub fn sigma_bar_sq(&self) -> f64 {
        self.sigma_bar_sq
    }

    pub fn sigma_sq(&self) -> f64 {
        self.sigma_sq
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn means(&self) -> Vec<f64> {
        self.items.iter().map(|i| i.mean).collect()
    }

    pub fn variances(&self) -> Vec<f64> {
        self.items.iter().map(|i| i.variance).collect()
    }

    pub fn is_simulable(&self) -> bool {
        !matches!(self.reward_kind, RewardKind::Moments)
    }

    /// Mean and variance of a solution: plain sums over its items.
    pub fn solution_moments(&self, s: &Solution) -> Result<(f64, f64)> {
        if let Some(&i) = s.items().iter().find(|&&i| i >= self.items.len()) {
            return Err(Error::ItemOutOfRange {
                index: i + 1,
                len: self.items.len(),
            });
        }
        Ok((self.mean_of(s.items()), self.var_of(s.items())))
    }

    #[inline]
    pub(crate) fn mean_of(&self, items: &[usize]) -> f64 {
        items.iter().map(|&i| self.items[i].mean).sum()
    }

    #[inline]
    pub(crate) fn var_of(&self, items: &[usize]) -> f64 {
        items.iter().map(|&i| self.items[i].variance).sum()
    }

    /// Whether a solution's true variance is at or above the budget.
    #[inline]
    pub fn is_unsafe(&self, items: &[usize]) -> bool {
        self.var_of(items) >= self.sigma_bar_sq
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_params_examples() {
        let (a, b) = beta_params_from_moments(0.3, 0.01).unwrap();
        assert!((a - 6.0).abs() < 1e-12 && (b - 14.0).abs() < 1e-12);
        let (a, b) = beta_params_from_moments(0.5, 0.24).unwrap();
        assert!((a - 1.0 / 48.0).abs() < 1e-15 && (b - 1.0 / 48.0).abs() < 1e-15);
        assert!(beta_params_from_moments(0.5, 0.25).is_err());
        assert!(beta_params_from_moments(0.5, 0.3).is_err());
    }

    #[test]
    fn degenerate_moments_switch_family() {
        let inst = Instance::new(
            &[0.5, 0.3, 0.2],
            &[0.25, 0.0, 0.01],
            RewardKind::Beta,
            FamilyKind::AllSubsetsUpToK,
            2,
            0.6,
            0.25,
        )
        .unwrap();
        assert!(matches!(
            inst.items()[0].distribution,
            ItemDistribution::Bernoulli { .. }
        ));
        assert!(matches!(
            inst.items()[1].distribution,
            ItemDistribution::PointMass { .. }
        ));
        assert!(matches!(
            inst.items()[2].distribution,
            ItemDistribution::Beta { .. }
        ));
    }

    #[test]
    fn budget_equal_to_a_solution_variance_is_rejected() {
        let err = Instance::new(
            &[0.5, 0.4],
            &[0.1, 0.2],
            RewardKind::Beta,
            FamilyKind::AllSubsetsUpToK,
            2,
            0.3,
            0.25,
        );
        assert!(err.is_err());
    }

    #[test]
    fn solution_moments_rejects_foreign_items() {
        let inst = Instance::new(
            &[0.5],
            &[0.1],
            RewardKind::Beta,
            FamilyKind::AllSubsetsUpToK,
            1,
            0.3,
            0.25,
        )
        .unwrap();
        assert!(inst.solution_moments(&Solution::new(vec![3])).is_err());
        assert_eq!(
            inst.solution_moments(&Solution::new(vec![0])).unwrap(),
            (0.5, 0.1)
        );
    }
}
