use serde::{Deserialize, Serialize};

use super::constants::HardnessConstants;
use crate::confidence::{ln_ln_plus, Omegas};
use crate::error::{Error, Result};

/// Which class a g or h term belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GClass {
    Optimal,
    SafeSuboptimal,
    Risky,
    UnsafeSuboptimal,
}

/// Derived confidence-parameter combinations.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OmegaCombos {
    pub mu_v: f64,
    pub v_vp: f64,
    pub max: f64,
    /// `√ln(1/ω_v′) + √ln(1/ω_v)`.
    pub sum: f64,
}

impl OmegaCombos {
    pub fn new(w: &Omegas) -> Self {
        OmegaCombos {
            mu_v: w.omega_mu.max(w.omega_v),
            v_vp: w.omega_v.max(w.omega_v_prime),
            max: w.omega_mu.max(w.omega_v).max(w.omega_v_prime),
            sum: (1.0 / w.omega_v_prime).ln().sqrt() + (1.0 / w.omega_v).ln().sqrt(),
        }
    }
}

/// Fixed inputs shared by every g and h evaluation of an instance.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HardnessContext {
    pub k: usize,
    pub big_q: usize,
    pub sigma_bar_sq: f64,
    pub omegas: Omegas,
    pub combos: OmegaCombos,
    pub epsilon: f64,
    pub constants: HardnessConstants,
}

impl HardnessContext {
    pub fn new(
        k: usize,
        big_q: usize,
        sigma_bar_sq: f64,
        omegas: Omegas,
        epsilon: f64,
    ) -> Result<Self> {
        for w in [omegas.omega_mu, omegas.omega_v, omegas.omega_v_prime] {
            if !(w > 0.0 && w < 1.0) {
                return Err(Error::InvalidParameter(format!(
                    "confidence parameters must lie in (0, 1) for the hardness evaluators, got {w}"
                )));
            }
        }
        if big_q == 0 || k == 0 {
            return Err(Error::InvalidParameter("K and Q must be at least 1".into()));
        }
        Ok(HardnessContext {
            k,
            big_q,
            sigma_bar_sq,
            omegas,
            combos: OmegaCombos::new(&omegas),
            epsilon,
            constants: HardnessConstants::new(k, epsilon),
        })
    }

    fn cgk(&self) -> f64 {
        self.constants.c * self.constants.gamma * self.k as f64
    }

    /// Parameters of the two-regime per-item g functions.
    fn regime(&self, class: GClass, gap: f64) -> Regime {
        let w = &self.omegas;
        let ln_v = (1.0 / w.omega_v).ln();
        let ln_vp = (1.0 / w.omega_v_prime).ln();
        let (x, s, lambda, c_else) = match class {
            GClass::SafeSuboptimal => (
                gap,
                self.sigma_bar_sq / (3.0 * ln_v.sqrt()),
                self.combos.mu_v,
                4.0,
            ),
            GClass::Risky => (
                gap / (3.0 * ln_vp.sqrt()),
                self.sigma_bar_sq / (3.0 * self.combos.sum),
                self.combos.v_vp,
                3.0,
            ),
            GClass::UnsafeSuboptimal => (
                gap,
                self.sigma_bar_sq / (3.0 * self.combos.sum),
                self.combos.max,
                3.0,
            ),
            GClass::Optimal => unreachable!("the optimal class has its own closed form"),
        };
        let ln_l = (1.0 / lambda).ln();
        let f = self.cgk() * (2.0 + (ln_ln_plus(1.0 / (ln_l * x * x)) + self.constants.d) / ln_l);
        Regime {
            x,
            s,
            f,
            n0: (x / s).floor(),
            c_else,
        }
    }

    fn optimal_factor(&self, gap: f64) -> f64 {
        2.0 * (1.0 / self.omegas.omega_v).ln() + ln_ln_plus(1.0 / (gap * gap)) + self.constants.d
    }
}

struct Regime {
    x: f64,
    s: f64,
    f: f64,
    n0: f64,
    c_else: f64,
}

fn check_gap(gap: f64) -> Result<()> {
    if gap > 0.0 && gap.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "composite gap must be positive and finite, got {gap}"
        )))
    }
}

/// g for phase index `r ∈ [1, Q−1]`.
pub fn g_eval(class: GClass, r: usize, gap: f64, ctx: &HardnessContext) -> Result<f64> {
    check_gap(gap)?;
    if r == 0 || r >= ctx.big_q {
        return Err(Error::InvalidParameter(format!(
            "r = {r} outside [1, Q−1] with Q = {}",
            ctx.big_q
        )));
    }
    let rm1 = (r - 1) as f64;
    if class == GClass::Optimal {
        let den = rm1 * ctx.sigma_bar_sq + gap;
        return Ok(9.0 * ctx.cgk() / (den * den) * ctx.optimal_factor(gap));
    }
    let reg = ctx.regime(class, gap);
    if r as f64 >= reg.n0 + 2.0 {
        let den = rm1 * reg.s;
        Ok(reg.f / (den * den))
    } else {
        Ok(reg.f / (reg.x * reg.x))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HBranch {
    /// r′ = Q: empty sum.
    Empty,
    /// Optimal class, r′ = 1.
    OptimalFirst,
    /// Optimal class, r′ ≥ 2.
    OptimalTail,
    /// Every remaining r is in the flat regime: (Q − r′)·F/x².
    Flat,
    /// r′ past the changing point: 2F/((r′−1)s²).
    Tail,
    /// Changing point at 0 and r′ = 1: 3F/x².
    First,
    /// Straddles the changing point: F·(c/(s·x) − (r′−1)/x²).
    Straddle,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HValue {
    pub value: f64,
    pub branch: HBranch,
    /// More than one closed-form case applied; the minimum was taken.
    pub boundary: bool,
}

/// Closed-form upper bound on Σ_{r=r′}^{Q−1} g(r), for `r′ ∈ [1, Q]`.
///
/// For the optimal class the bound assumes `gap ≤ σ̄²`, which holds for every
/// safe optimal solution.
pub fn h_eval(class: GClass, r_prime: usize, gap: f64, ctx: &HardnessContext) -> Result<HValue> {
    check_gap(gap)?;
    let q = ctx.big_q;
    if r_prime == 0 || r_prime > q {
        return Err(Error::InvalidParameter(format!(
            "r′ = {r_prime} outside [1, Q] with Q = {q}"
        )));
    }
    if r_prime == q {
        return Ok(HValue {
            value: 0.0,
            branch: HBranch::Empty,
            boundary: false,
        });
    }
    if class == GClass::Optimal {
        let base = 18.0 * ctx.cgk() * ctx.optimal_factor(gap);
        return Ok(if r_prime == 1 {
            HValue {
                value: base / (gap * gap),
                branch: HBranch::OptimalFirst,
                boundary: false,
            }
        } else {
            let v = base / ((r_prime - 1) as f64 * ctx.sigma_bar_sq * ctx.sigma_bar_sq);
            HValue {
                value: v,
                branch: HBranch::OptimalTail,
                boundary: false,
            }
        });
    }
    let reg = ctx.regime(class, gap);
    let rp = r_prime as f64;
    let x2 = reg.x * reg.x;
    let mut cands: Vec<(f64, HBranch)> = Vec::with_capacity(3);
    if reg.n0 >= q as f64 - 3.0 {
        cands.push(((q - r_prime) as f64 * reg.f / x2, HBranch::Flat));
    }
    if rp >= reg.n0 + 2.0 && r_prime <= q - 1 {
        cands.push((2.0 * reg.f / ((rp - 1.0) * reg.s * reg.s), HBranch::Tail));
    }
    if reg.n0 == 0.0 && r_prime == 1 {
        cands.push((3.0 * reg.f / x2, HBranch::First));
    }
    if cands.is_empty() {
        let v = reg.f * (reg.c_else / (reg.s * reg.x) - (rp - 1.0) / x2);
        return Ok(HValue {
            value: v,
            branch: HBranch::Straddle,
            boundary: false,
        });
    }
    let boundary = cands.len() > 1;
    let (value, branch) = cands
        .into_iter()
        .fold((f64::INFINITY, HBranch::Flat), |b, c| {
            if c.0 < b.0 {
                c
            } else {
                b
            }
        });
    Ok(HValue {
        value,
        branch,
        boundary,
    })
}

/// Σ_{r=r′}^{Q−1} g(r), summed term by term.
pub fn h_exact(class: GClass, r_prime: usize, gap: f64, ctx: &HardnessContext) -> Result<f64> {
    check_gap(gap)?;
    if r_prime == 0 || r_prime > ctx.big_q {
        return Err(Error::InvalidParameter(format!(
            "r′ = {r_prime} outside [1, Q]"
        )));
    }
    // Adding 0.0 turns the empty sum's -0.0 into 0.0.
    (r_prime..ctx.big_q)
        .map(|r| g_eval(class, r, gap, ctx))
        .sum::<Result<f64>>()
        .map(|v| v + 0.0)
}
