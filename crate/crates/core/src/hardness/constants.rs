use serde::{Deserialize, Serialize};

use crate::confidence::{gamma, ln_ln_plus};

/// Closed-form value of Σ_j a_j/b_j = 324·Σ_j (4/9)^j.
pub const C_CONSTANT: f64 = 259.2;

/// `a_j = 4/9^(j−2)`.
pub fn a_j(j: u32) -> f64 {
    4.0 * 9f64.powi(2 - j as i32)
}

/// `b_j = 1/4^j`.
pub fn b_j(j: u32) -> f64 {
    0.25f64.powi(j as i32)
}

/// Partial sums of a_j/b_j, stopped once the geometric tail falls below
/// `1e-12` of the partial sum. Returns the sum and the number of terms.
pub fn series_constant() -> (f64, u32) {
    const RATIO: f64 = 4.0 / 9.0;
    let mut sum = 0.0;
    let mut j = 0;
    loop {
        j += 1;
        let term = a_j(j) / b_j(j);
        sum += term;
        let tail = term * RATIO / (1.0 - RATIO);
        if tail < 1e-12 * sum {
            return (sum, j);
        }
    }
}

/// `D = ln(324·K²·(1+ε)²·(1+√ε)²)`.
pub fn d_constant(k: usize, epsilon: f64) -> f64 {
    let k = k as f64;
    let s = 1.0 + epsilon.sqrt();
    (324.0 * k * k * (1.0 + epsilon).powi(2) * s * s).ln()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HardnessConstants {
    pub c: f64,
    pub c_terms: u32,
    pub gamma: f64,
    pub d: f64,
}

impl HardnessConstants {
    pub fn new(k: usize, epsilon: f64) -> Self {
        let (c, c_terms) = series_constant();
        HardnessConstants {
            c,
            c_terms,
            gamma: gamma(epsilon),
            d: d_constant(k, epsilon),
        }
    }
}

/// `m_j(x, ω) = a_j·γK²/x²·(2 ln(1/ω) + ln ln₊(1/x²) + D)`.
///
/// `+∞` when the gap is undefined or ω lies outside `(0, ln(1+ε)/e)`.
pub fn m_j(j: u32, x: Option<f64>, omega: f64, k: usize, epsilon: f64) -> f64 {
    let Some(x) = x else { return f64::INFINITY };
    let upper = epsilon.ln_1p() / std::f64::consts::E;
    if !(x > 0.0) || !(omega > 0.0 && omega < upper) {
        return f64::INFINITY;
    }
    let kf = k as f64;
    a_j(j) * gamma(epsilon) * kf * kf / (x * x)
        * (2.0 * (1.0 / omega).ln() + ln_ln_plus(1.0 / (x * x)) + d_constant(k, epsilon))
}
