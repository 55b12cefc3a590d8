//! Seeded Monte-Carlo harness and the reference experiment presets.

mod aggregate;
mod experiment;
mod monte_carlo;
mod presets;

pub use aggregate::{
    additional_regret, aggregate_safety, linear_fit, mean_se, quartile_slopes, trace_safety,
    Aggregate, AggregatePoint, AggregateRow, DiffPoint, LinearFit, RegretKind, SafetyStats,
};
pub use experiment::{
    run_experiment, AdditionalSeries, ExperimentOptions, ExperimentReport, RunSummaryEntry,
};
pub use monte_carlo::{collect_traces, monte_carlo, simulate_run};
pub use presets::{
    default_horizon, exp3_grid, experiment_preset, reference_set1, reference_set2, ConfigEcho,
    RunConfig, DEFAULT_REPS, REFERENCE_DELTA, REFERENCE_K, REFERENCE_MEANS, REFERENCE_SIGMA_SQ,
    SAFETY_REPS, SET1_VARIANCES, SET2_VARIANCES,
};
