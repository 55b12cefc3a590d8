//! Closed-form bound machinery: constants, g and h functions, the hardness
//! parameter and the regret bound terms.

mod constants;
mod functions;
mod report;

pub use constants::{a_j, b_j, d_constant, m_j, series_constant, HardnessConstants, C_CONSTANT};
pub use functions::{
    g_eval, h_eval, h_exact, GClass, HBranch, HValue, HardnessContext, OmegaCombos,
};
pub use report::{
    hardness_h, hardness_report, regret_bounds, ClassTerm, HRow, HardnessInput, HardnessReport,
    ProblemIndependent, RegretBounds, SkippedTerm,
};
