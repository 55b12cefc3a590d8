//! Bernoulli instances made of disjoint paths, one class of path per role.

use super::family::FamilyKind;
use super::instance::{Instance, RewardKind};
use super::partition::{classify, SolutionClass};
use super::solution::Solution;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathClass {
    Optimal,
    SafeSuboptimal,
    Risky,
    UnsafeSuboptimal,
}

impl PathClass {
    fn expected(self) -> SolutionClass {
        match self {
            PathClass::Optimal => SolutionClass::Optimal,
            PathClass::SafeSuboptimal => SolutionClass::SafeSuboptimal,
            PathClass::Risky => SolutionClass::Risky,
            PathClass::UnsafeSuboptimal => SolutionClass::UnsafeSuboptimal,
        }
    }
}

/// One path: `size` Bernoulli items that all share `mean`.
#[derive(Clone, Copy, Debug)]
pub struct PathSpec {
    pub class: PathClass,
    pub size: usize,
    pub mean: f64,
}

/// Item means of the four path classes for a mean level `gap` and perturbation `eps_mu`.
pub fn class_means(gap: f64, eps_mu: f64, k: usize) -> [f64; 4] {
    let d = eps_mu / k as f64;
    [gap, gap - d, gap + d, gap - d]
}

/// Builds the instance and checks that every full path lands in its intended class.
pub fn kpath_from_specs(paths: &[PathSpec], sigma_bar_sq: f64, sigma_sq: f64) -> Result<Instance> {
    if paths.is_empty() {
        return Err(Error::InvalidParameter("need at least one path".into()));
    }
    let mut means = Vec::new();
    let mut sizes = Vec::new();
    for p in paths {
        if !(p.mean > 0.0 && p.mean < 1.0) {
            return Err(Error::InfeasibleMoments {
                mean: p.mean,
                variance: p.mean * (1.0 - p.mean),
            });
        }
        means.extend(std::iter::repeat_n(p.mean, p.size));
        sizes.push(p.size);
    }
    let vars: Vec<f64> = means.iter().map(|m| m * (1.0 - m)).collect();
    let k = sizes.iter().copied().max().unwrap_or(1);
    let inst = Instance::new(
        &means,
        &vars,
        RewardKind::Bernoulli,
        FamilyKind::KPath { path_sizes: sizes },
        k,
        sigma_bar_sq,
        sigma_sq,
    )?;
    let part = classify(&inst)?;
    let mut start = 0;
    for (n, p) in paths.iter().enumerate() {
        let full = Solution::new((start..start + p.size).collect());
        start += p.size;
        let idx = inst.family().index_of(&full).expect("path is a member");
        let got = part.class_of(idx);
        if got != p.class.expected() {
            return Err(Error::InvalidParameter(format!(
                "infeasible means: path {} ({full}) was meant to be {:?} but classifies as {got:?}",
                n + 1,
                p.class
            )));
        }
    }
    Ok(inst)
}

/// Equal-size paths: the first is optimal, the rest split evenly into
/// safe-suboptimal, risky and unsafe-suboptimal groups (in that order).
pub fn kpath_instance(
    num_paths: usize,
    path_size: usize,
    means_per_class: [f64; 4],
    sigma_bar_sq: f64,
    sigma_sq: f64,
) -> Result<Instance> {
    if num_paths == 0 || (num_paths - 1) % 3 != 0 {
        return Err(Error::InvalidParameter(format!(
            "number of paths must be 1 + 3m, got {num_paths}"
        )));
    }
    let group = (num_paths - 1) / 3;
    let classes = [
        PathClass::SafeSuboptimal,
        PathClass::Risky,
        PathClass::UnsafeSuboptimal,
    ];
    let mut specs = vec![PathSpec {
        class: PathClass::Optimal,
        size: path_size,
        mean: means_per_class[0],
    }];
    for (c, &class) in classes.iter().enumerate() {
        for _ in 0..group {
            specs.push(PathSpec {
                class,
                size: path_size,
                mean: means_per_class[c + 1],
            });
        }
    }
    kpath_from_specs(&specs, sigma_bar_sq, sigma_sq)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_variance_identity() {
        let inst = kpath_instance(1, 2, [0.3, 0.0, 0.0, 0.0], 0.5, 0.25).unwrap();
        for it in inst.items() {
            assert!((it.variance - 0.21).abs() < 1e-15);
        }
    }

    #[test]
    fn equal_sizes_cannot_realize_all_classes() {
        // With one path length, Bernoulli variance ties safety to the mean.
        let err = kpath_instance(4, 2, [0.25, 0.2, 0.3, 0.2], 0.4, 0.25);
        assert!(err.is_err());
    }

    #[test]
    fn bad_path_count() {
        assert!(kpath_instance(3, 2, [0.3; 4], 0.5, 0.25).is_err());
    }
}
