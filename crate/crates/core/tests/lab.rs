use pascomb::engine::{Algorithm, TraceMode};
use pascomb::lab::{
    additional_regret, aggregate_safety, collect_traces, exp3_grid, experiment_preset, monte_carlo,
    reference_set1, reference_set2, run_experiment, simulate_run, trace_safety, Aggregate,
    ExperimentOptions, RegretKind, RunConfig,
};
use pascomb::model::{classify, Solution, SolutionClass};
use pascomb::Error;

fn cfg(budget: f64, alg: Algorithm, horizon: u64, reps: usize) -> RunConfig {
    let mut c = RunConfig::new("t", reference_set1(budget).unwrap(), alg, horizon);
    c.replications = reps;
    c.master_seed = 2024;
    c
}

#[test]
fn exp3_grid_endpoints() {
    let g = exp3_grid();
    assert_eq!(g.len(), 10);
    assert!((g[0] - 0.14).abs() < 1e-15);
    assert!((g[9] - 0.14 * 1.2f64.powi(9)).abs() < 1e-12);
    assert!((g[9] - 0.7223).abs() < 1e-4);
}

#[test]
fn presets_shape() {
    let e1 = experiment_preset(1).unwrap();
    assert_eq!(e1.len(), 3);
    let unconstrained = e1.iter().find(|c| c.label == "pascomb@0.751").unwrap();
    assert_eq!(
        pascomb::engine::absolutely_safe_threshold(&unconstrained.instance).1,
        1
    );

    let e2 = experiment_preset(2).unwrap();
    let part = classify(&e2[0].instance).unwrap();
    let k = e2[0]
        .instance
        .family()
        .index_of(&Solution::new(vec![0, 1, 2]))
        .unwrap();
    assert_eq!(part.class_of(k), SolutionClass::Risky);
    assert!(e2
        .iter()
        .all(|c| c.delta == 0.05 && c.instance.k() == 3 && c.instance.sigma_sq() == 0.25));

    let e3 = experiment_preset(3).unwrap();
    assert_eq!(
        e3.iter()
            .filter(|c| c.algorithm == Algorithm::PasComb)
            .count(),
        10
    );
    assert!(matches!(
        experiment_preset(4),
        Err(Error::InvalidParameter(_))
    ));
}

#[test]
fn single_run_aggregate_equals_trace() {
    let c = cfg(0.4, Algorithm::PasComb, 2000, 1);
    let tr = simulate_run(&c, 0, TraceMode::Summary).unwrap();
    let agg = monte_carlo(&c, 1).unwrap();
    assert_eq!(agg.runs, 1);
    for (p, cp) in agg.points.iter().zip(&tr.checkpoints) {
        assert_eq!(
            (p.t, p.mean_regret, p.se_regret),
            (cp.t, cp.pseudo_regret, 0.0)
        );
    }
}

#[test]
fn additional_regret_of_self_is_zero() {
    let agg = monte_carlo(&cfg(0.4, Algorithm::PasComb, 1000, 3), 1).unwrap();
    assert!(additional_regret(&agg, &agg)
        .unwrap()
        .iter()
        .all(|d| d.mean == 0.0));
    let other = monte_carlo(&cfg(0.4, Algorithm::PasComb, 1200, 3), 1).unwrap();
    assert!(matches!(
        additional_regret(&agg, &other),
        Err(Error::CheckpointMismatch)
    ));
}

#[test]
fn parallel_equals_serial() {
    let c = cfg(0.4, Algorithm::PasComb, 3000, 8);
    let a = collect_traces(&c, 1, TraceMode::Full).unwrap();
    let b = collect_traces(&c, 4, TraceMode::Full).unwrap();
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x.steps, y.steps);
        assert_eq!(x.summary, y.summary);
    }
    let sa = Aggregate::from_traces("a", &a, RegretKind::Realized).unwrap();
    let sb = Aggregate::from_traces("a", &b, RegretKind::Realized).unwrap();
    assert_eq!(sa.points, sb.points);
}

#[test]
fn safety_counting() {
    let c = cfg(0.4, Algorithm::CombUcb1, 3000, 2);
    let tr = simulate_run(&c, 0, TraceMode::Full).unwrap();
    let s = trace_safety(&tr);
    let unsafe_steps = tr.steps.iter().filter(|r| r.unsafe_pull).count();
    assert_eq!(s.per_step_violation_fraction, unsafe_steps as f64 / 3000.0);
    assert_eq!(s.any_violation, if unsafe_steps > 0 { 1.0 } else { 0.0 });

    // No unsafe solution at all: both zero.
    let mut safe = RunConfig::new("s", reference_set2(0.5).unwrap(), Algorithm::CombUcb1, 2000);
    safe.replications = 3;
    let agg = monte_carlo(&safe, 1).unwrap();
    let s = aggregate_safety(&agg);
    assert_eq!((s.any_violation, s.per_step_violation_fraction), (0.0, 0.0));
}

#[test]
fn mu_star_monotone_in_budget() {
    let mut last = 0.0;
    for b in [0.27, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8] {
        let inst = reference_set1(b).unwrap();
        let mu = classify(&inst).unwrap().mu_star;
        assert!(mu >= last);
        last = mu;
    }
}

#[test]
fn invalid_configs() {
    let mut c = cfg(0.4, Algorithm::PasComb, 100, 1);
    c.replications = 0;
    assert!(c.validate().unwrap_err().is_config_error());
    let mut c = cfg(0.4, Algorithm::PasComb, 100, 1);
    c.delta = 1.0;
    assert!(c.validate().is_err());
}

#[test]
fn tiny_experiment_runs() {
    let opts = ExperimentOptions {
        master_seed: 5,
        parallelism: 2,
        horizon: Some(2000),
        replications: Some(2),
    };
    let rep = run_experiment(2, &opts).unwrap();
    assert_eq!(rep.runs.len(), 2);
    assert_eq!(rep.additional.len(), 1);
    assert!(rep.fit.is_none());
}
