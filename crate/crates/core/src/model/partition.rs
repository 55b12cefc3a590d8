use serde::Serialize;

use super::instance::Instance;
use super::solution::Solution;
use crate::error::{Error, Result};

/// Means closer than this to the safe optimum count as ties.
pub const TIE_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolutionClass {
    Optimal,
    SafeSuboptimal,
    Risky,
    UnsafeSuboptimal,
}

/// Every member of the family sorted into exactly one class.
///
/// Solution references are indices into the instance's family.
#[derive(Clone, Debug)]
pub struct SafetyPartition {
    pub optimal: usize,
    pub optimal_solution: Solution,
    pub mu_star: f64,
    pub safe_suboptimal: Vec<usize>,
    pub risky: Vec<usize>,
    pub unsafe_suboptimal: Vec<usize>,
    pub warnings: Vec<String>,
    classes: Vec<SolutionClass>,
}

impl SafetyPartition {
    pub fn class_of(&self, k: usize) -> SolutionClass {
        self.classes[k]
    }

    pub fn classes(&self) -> &[SolutionClass] {
        &self.classes
    }
}

/// Finds the best safe solution and classifies the rest relative to it.
pub fn classify(instance: &Instance) -> Result<SafetyPartition> {
    let fam = instance.family();
    let budget = instance.sigma_bar_sq();
    let mut best: Option<(usize, f64)> = None;
    for k in 0..fam.len() {
        let items = fam.items_of(k);
        if instance.var_of(items) < budget {
            let mu = instance.mean_of(items);
            // Members are in canonical order, so strict improvement keeps the first maximizer.
            if best.is_none_or(|(_, b)| mu > b) {
                best = Some((k, mu));
            }
        }
    }
    let (optimal, mu_star) = best.ok_or(Error::NoSafeSolution)?;

    let mut warnings = Vec::new();
    let mut classes = Vec::with_capacity(fam.len());
    let (mut safe_sub, mut risky, mut unsafe_sub) = (Vec::new(), Vec::new(), Vec::new());
    for k in 0..fam.len() {
        let items = fam.items_of(k);
        let mu = instance.mean_of(items);
        let safe = instance.var_of(items) < budget;
        let class = if k == optimal {
            SolutionClass::Optimal
        } else if mu >= mu_star {
            risky.push(k);
            SolutionClass::Risky
        } else if safe {
            safe_sub.push(k);
            SolutionClass::SafeSuboptimal
        } else {
            unsafe_sub.push(k);
            SolutionClass::UnsafeSuboptimal
        };
        if k != optimal && safe && (mu - mu_star).abs() <= TIE_TOL {
            warnings.push(format!(
                "safe solution {} ties the optimum {} (mean {mu}); keeping the canonical first",
                fam.get(k),
                fam.get(optimal)
            ));
        }
        classes.push(class);
    }
    for w in &warnings {
        log::warn!("{w}");
    }
    Ok(SafetyPartition {
        optimal,
        optimal_solution: fam.get(optimal).clone(),
        mu_star,
        safe_suboptimal: safe_sub,
        risky,
        unsafe_suboptimal: unsafe_sub,
        warnings,
        classes,
    })
}
