#![allow(dead_code)]

use pascomb::model::{FamilyKind, Instance, RewardKind};

/// Three items, K = 2, six solutions; small enough to check by hand.
pub fn three_items() -> Instance {
    Instance::new(
        &[0.5, 0.4, 0.3],
        &[0.3, 0.2, 0.1],
        RewardKind::Moments,
        FamilyKind::AllSubsetsUpToK,
        2,
        0.45,
        0.3,
    )
    .unwrap()
}

pub fn subsets(means: &[f64], vars: &[f64], kind: RewardKind, k: usize, budget: f64) -> Instance {
    Instance::new(
        means,
        vars,
        kind,
        FamilyKind::AllSubsetsUpToK,
        k,
        budget,
        0.25,
    )
    .unwrap()
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + b.abs())
}
