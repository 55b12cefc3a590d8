//! Instances, solution families, safety classification and gap quantities.

mod family;
mod gaps;
mod instance;
pub mod kpath;
mod partition;
mod solution;

pub use family::{enumerate_solutions, FamilyKind, SolutionFamily, MAX_FAMILY_SIZE};
pub use gaps::{compute_gaps, GapTable, ItemGaps, SolutionGaps};
pub use instance::{
    beta_params_from_moments, Instance, Item, ItemDistribution, RewardKind, DEFAULT_SIGMA_SQ,
    MOMENT_TOL,
};
pub use kpath::{kpath_from_specs, kpath_instance, PathClass, PathSpec};
pub use partition::{classify, SafetyPartition, SolutionClass, TIE_TOL};
pub use solution::Solution;
