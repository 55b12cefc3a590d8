//! Online algorithms: PASCombUCB with Greedy-Split and the CombUCB1 baseline.

mod env;
mod oracle;
mod run;
mod split;
mod trace;

pub use env::{run_seed, Environment, Environments, OBSERVED_STREAM, REFERENCE_STREAM};
pub use oracle::{init_select, oracle_select, unconstrained_select};
pub use run::{combucb1_run, pascomb_run, run_algorithm, RunOptions};
pub use split::{absolutely_safe_threshold, greedy_split, thresholds, SplitResult, SPLIT_TOL};
pub use trace::{
    checkpoint_grid, Algorithm, Checkpoint, PhaseKind, PhaseRow, RegretLedger, RunSummary, StepRow,
    Trace, TraceMode,
};
