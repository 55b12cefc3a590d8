mod common;

use common::{close, three_items};
use pascomb::lab::{reference_set1, reference_set2};
use pascomb::model::{
    classify, compute_gaps, enumerate_solutions, kpath_from_specs, FamilyKind, Instance, PathClass,
    PathSpec, RewardKind, Solution, SolutionClass,
};
use pascomb::Error;

fn sol(items: &[usize]) -> Solution {
    Solution::from_one_based(items).unwrap()
}

#[test]
fn set1_moments() {
    let inst = reference_set1(0.4).unwrap();
    let (m, v) = inst.solution_moments(&sol(&[1, 3, 4])).unwrap();
    assert!(close(m, 1.25, 1e-12) && close(v, 0.29, 1e-12));
    let (m, v) = inst.solution_moments(&sol(&[7])).unwrap();
    assert_eq!((m, v), (0.3, 0.01));
}

#[test]
fn set2_triples_have_variance_003() {
    let inst = reference_set2(0.14).unwrap();
    for s in inst.family().members().iter().filter(|s| s.len() == 3) {
        assert!(close(inst.solution_moments(s).unwrap().1, 0.03, 1e-12));
    }
}

#[test]
fn set1_classification_at_04() {
    let inst = reference_set1(0.4).unwrap();
    let part = classify(&inst).unwrap();
    assert_eq!(part.optimal_solution, sol(&[1, 3, 4]));
    assert!(close(part.mu_star, 1.25, 1e-12));
    let k = inst.family().index_of(&sol(&[1, 2, 3])).unwrap();
    assert_eq!(part.class_of(k), SolutionClass::Risky);
}

#[test]
fn set1_classification_at_06() {
    let part = classify(&reference_set1(0.6).unwrap()).unwrap();
    assert_eq!(part.optimal_solution, sol(&[1, 2, 3]));
    assert!(close(part.mu_star, 1.35, 1e-12));
}

#[test]
fn three_item_partition_by_hand() {
    let inst = three_items();
    let part = classify(&inst).unwrap();
    let fam = inst.family();
    let names = |ks: &[usize]| ks.iter().map(|&k| fam.get(k).clone()).collect::<Vec<_>>();
    assert_eq!(part.optimal_solution, sol(&[1, 3]));
    assert!(close(part.mu_star, 0.8, 1e-12));
    assert_eq!(names(&part.risky), vec![sol(&[1, 2])]);
    assert_eq!(
        names(&part.safe_suboptimal),
        vec![sol(&[1]), sol(&[2]), sol(&[3]), sol(&[2, 3])]
    );
    assert!(part.unsafe_suboptimal.is_empty());

    let (_, gaps) = compute_gaps(&inst, 1000, 0.05).unwrap();
    assert!(close(gaps.items[1].risky_var_min.unwrap(), 0.05, 1e-12));
    assert!(gaps.items[2].risky_var_min.is_none());
    assert!(gaps
        .items
        .iter()
        .all(|g| g.unsafe_suboptimal_min.is_none() && g.phi.is_none()));
}

#[test]
fn partition_covers_family() {
    for budget in [0.3, 0.4, 0.6, 0.751] {
        let inst = reference_set1(budget).unwrap();
        let part = classify(&inst).unwrap();
        let n = 1 + part.safe_suboptimal.len() + part.risky.len() + part.unsafe_suboptimal.len();
        assert_eq!(n, inst.family().len());
        for &k in &part.risky {
            assert!(inst.mean_of_solution(k) >= part.mu_star);
        }
        for &k in &part.safe_suboptimal {
            let s = inst.family().get(k);
            let (m, v) = inst.solution_moments(s).unwrap();
            assert!(v < budget && m < part.mu_star);
        }
    }
}

trait MeanOf {
    fn mean_of_solution(&self, k: usize) -> f64;
}

impl MeanOf for Instance {
    fn mean_of_solution(&self, k: usize) -> f64 {
        self.solution_moments(self.family().get(k)).unwrap().0
    }
}

#[test]
fn set2_var_gap_at_014() {
    let inst = reference_set2(0.14).unwrap();
    let (_, gaps) = compute_gaps(&inst, 1000, 0.05).unwrap();
    for (k, s) in inst.family().members().iter().enumerate() {
        if s.len() == 3 {
            assert!(close(gaps.solutions[k].var_gap, 0.11, 1e-12));
        }
    }
}

#[test]
fn optimal_not_in_minima() {
    let inst = reference_set1(0.4).unwrap();
    let (part, gaps) = compute_gaps(&inst, 10_000, 0.05).unwrap();
    assert_eq!(gaps.solutions[part.optimal].mean_gap, 0.0);
    for g in &gaps.items {
        for v in [g.safe_suboptimal_min, g.unsafe_suboptimal_min]
            .into_iter()
            .flatten()
        {
            assert!(v > 0.0);
        }
    }
}

#[test]
fn tension_in_unit_interval() {
    let inst = kpath_example();
    let (part, gaps) = compute_gaps(&inst, 10_000, 0.05).unwrap();
    let fam = inst.family();
    for (i, g) in gaps.items.iter().enumerate() {
        let Some(c) = g.tension else { continue };
        assert!(c > 0.0 && c <= 1.0);
        let any_dominant = part.unsafe_suboptimal.iter().any(|&k| {
            let s = gaps.solutions[k];
            fam.get(k).contains(i) && s.mean_gap >= s.var_gap / 3.0
        });
        assert_eq!(c == 1.0, any_dominant, "item {}", i + 1);
    }
}

#[test]
fn psi_monotone_in_horizon_and_delta() {
    let inst = reference_set1(0.4).unwrap();
    let psi = |t, d| {
        let (_, g) = compute_gaps(&inst, t, d).unwrap();
        g.items
            .iter()
            .map(|x| x.psi.unwrap_or(0.0))
            .collect::<Vec<_>>()
    };
    let ts = [100, 1000, 10_000, 100_000];
    for w in ts.windows(2) {
        assert!(psi(w[0], 0.05)
            .iter()
            .zip(psi(w[1], 0.05))
            .all(|(a, b)| *a <= b));
    }
    let ds = [0.01, 0.05, 0.2, 0.5];
    for w in ds.windows(2) {
        assert!(psi(1000, w[0])
            .iter()
            .zip(psi(1000, w[1]))
            .all(|(a, b)| *a >= b));
    }
}

#[test]
fn families_are_downward_closed() {
    let kinds = [
        (FamilyKind::AllSubsetsUpToK, 6, 3),
        (
            FamilyKind::KPath {
                path_sizes: vec![3, 2, 1],
            },
            6,
            3,
        ),
    ];
    for (kind, l, k) in kinds {
        let members = enumerate_solutions(&kind, l, k).unwrap();
        for s in &members {
            let items = s.items();
            for mask in 1..(1u32 << items.len()) {
                let sub: Vec<usize> = items
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask >> b & 1 == 1)
                    .map(|(_, &i)| i)
                    .collect();
                assert!(members.contains(&Solution::new(sub)));
            }
        }
    }
}

#[test]
fn explicit_closure_error_names_subset() {
    let kind = FamilyKind::Explicit(vec![sol(&[1]), sol(&[1, 2])]);
    match enumerate_solutions(&kind, 2, 2) {
        Err(Error::NotDownwardClosed { missing, .. }) => assert_eq!(missing, "{2}"),
        other => panic!("expected closure error, got {other:?}"),
    }
}

#[test]
fn no_safe_solution_is_an_error() {
    let inst = Instance::new(
        &[0.5, 0.5],
        &[0.2, 0.2],
        RewardKind::Moments,
        FamilyKind::AllSubsetsUpToK,
        2,
        0.1,
        0.25,
    );
    let err = inst.and_then(|i| classify(&i).map(|_| ())).unwrap_err();
    assert!(err.is_config_error());
}

#[test]
fn singletons_safe_when_budget_exceeds_proxy() {
    let inst = reference_set1(0.3).unwrap();
    let part = classify(&inst).unwrap();
    for (k, s) in inst.family().members().iter().enumerate() {
        if s.len() == 1 {
            assert_ne!(part.class_of(k), SolutionClass::UnsafeSuboptimal);
        }
    }
}

fn kpath_example() -> Instance {
    let specs = [
        PathSpec {
            class: PathClass::Optimal,
            size: 2,
            mean: 0.78,
        },
        PathSpec {
            class: PathClass::SafeSuboptimal,
            size: 2,
            mean: 0.75,
        },
        PathSpec {
            class: PathClass::Risky,
            size: 3,
            mean: 0.6,
        },
        PathSpec {
            class: PathClass::UnsafeSuboptimal,
            size: 2,
            mean: 0.5,
        },
    ];
    kpath_from_specs(&specs, 0.4, 0.25).unwrap()
}

#[test]
fn kpath_one_path_per_class() {
    let inst = kpath_example();
    let part = classify(&inst).unwrap();
    assert_eq!(part.risky.len(), 1);
    assert_eq!(inst.family().get(part.risky[0]), &sol(&[5, 6, 7]));
    for it in inst.items() {
        assert!(close(it.variance, it.mean * (1.0 - it.mean), 1e-12));
    }
}

#[test]
fn oversized_family_is_rejected() {
    let n = 40;
    let err = Instance::new(
        &vec![0.5; n],
        &vec![0.01; n],
        RewardKind::Moments,
        FamilyKind::AllSubsetsUpToK,
        20,
        1.0,
        0.25,
    )
    .unwrap_err();
    assert!(err.to_string().contains("members"), "{err}");
}
