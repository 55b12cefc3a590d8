//! Per-item running statistics and LIL confidence bounds.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::Solution;

pub const DEFAULT_EPSILON: f64 = 0.01;

/// ln ln y for y ≥ e, otherwise 0.
pub fn ln_ln_plus(y: f64) -> f64 {
    if y >= std::f64::consts::E {
        y.ln().ln()
    } else {
        0.0
    }
}

/// LIL radius `(1+√ε)·sqrt((1+ε)/(2t)·ln(ln((1+ε)t)/ρ))`.
///
/// Returns `+∞` when the outer logarithm would be negative.
pub fn lil(t: u64, rho: f64, epsilon: f64) -> Result<f64> {
    if t == 0 {
        return Err(Error::ZeroCount);
    }
    Ok(lil_unchecked(t, rho, epsilon))
}

#[inline]
pub(crate) fn lil_unchecked(t: u64, rho: f64, epsilon: f64) -> f64 {
    let t = t as f64;
    let inner = ((1.0 + epsilon) * t).ln() / rho;
    if !(inner >= 1.0) {
        return f64::INFINITY;
    }
    (1.0 + epsilon.sqrt()) * ((1.0 + epsilon) / (2.0 * t) * inner.ln()).sqrt()
}

/// `((2+ε)/ε)·(ω/ln(1+ε))^(1+ε)`.
pub fn xi(omega: f64, epsilon: f64) -> f64 {
    (2.0 + epsilon) / epsilon * (omega / epsilon.ln_1p()).powf(1.0 + epsilon)
}

/// `(1+ε)(1+√ε)²/2`.
pub fn gamma(epsilon: f64) -> f64 {
    let s = 1.0 + epsilon.sqrt();
    (1.0 + epsilon) * s * s / 2.0
}

/// Pull count beyond which `u·x > lil(t, ω)` is guaranteed.
pub fn lil_inversion_m(x: f64, omega: f64, u: f64, epsilon: f64) -> f64 {
    let g = gamma(epsilon);
    g / (u * u * x * x)
        * (2.0 * (1.0 / omega).ln()
            + ln_ln_plus(1.0 / (x * x))
            + (2.0 * g * (1.0 + epsilon) / (u * u)).ln())
}

/// The three confidence parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Omegas {
    pub omega_mu: f64,
    pub omega_v: f64,
    pub omega_v_prime: f64,
}

/// `ω_μ = ω_v′ = 1/T²`, `ω_v = δ/T²`.
pub fn default_omegas(horizon: u64, delta: f64) -> Result<Omegas> {
    if horizon == 0 {
        return Err(Error::InvalidParameter("horizon must be at least 1".into()));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "delta must lie in (0, 1), got {delta}"
        )));
    }
    let t2 = (horizon as f64) * (horizon as f64);
    Ok(Omegas {
        omega_mu: 1.0 / t2,
        omega_v: delta / t2,
        omega_v_prime: 1.0 / t2,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LilConfig {
    pub epsilon: f64,
    pub omega_mu: f64,
    pub omega_v: f64,
    pub omega_v_prime: f64,
}

impl LilConfig {
    pub fn new(epsilon: f64, omegas: Omegas) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "epsilon must lie in (0, 1), got {epsilon}"
            )));
        }
        for (name, w) in [
            ("omega_mu", omegas.omega_mu),
            ("omega_v", omegas.omega_v),
            ("omega_v_prime", omegas.omega_v_prime),
        ] {
            if !(w > 0.0 && w.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be positive, got {w}"
                )));
            }
        }
        Ok(LilConfig {
            epsilon,
            omega_mu: omegas.omega_mu,
            omega_v: omegas.omega_v,
            omega_v_prime: omegas.omega_v_prime,
        })
    }

    pub fn for_horizon(horizon: u64, delta: f64, epsilon: f64) -> Result<Self> {
        LilConfig::new(epsilon, default_omegas(horizon, delta)?)
    }

    pub fn omegas(&self) -> Omegas {
        Omegas {
            omega_mu: self.omega_mu,
            omega_v: self.omega_v,
            omega_v_prime: self.omega_v_prime,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Radii {
    pub alpha: f64,
    pub beta_u: f64,
    pub beta_l: f64,
}

pub fn radii(t: u64, cfg: &LilConfig) -> Result<Radii> {
    if t == 0 {
        return Err(Error::ZeroCount);
    }
    Ok(radii_unchecked(t, cfg))
}

#[inline]
fn radii_unchecked(t: u64, cfg: &LilConfig) -> Radii {
    Radii {
        alpha: lil_unchecked(t, cfg.omega_mu, cfg.epsilon),
        beta_u: 3.0 * lil_unchecked(t, cfg.omega_v, cfg.epsilon),
        beta_l: 3.0 * lil_unchecked(t, cfg.omega_v_prime, cfg.epsilon),
    }
}

/// Neumaier-compensated running sum.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
struct Compensated {
    sum: f64,
    comp: f64,
}

impl Compensated {
    #[inline]
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Running statistics of one item.
///
/// Sums are kept relative to the first observed reward, which leaves the
/// population variance `Σx²/n − x̄²` mathematically unchanged but makes
/// constant reward streams give exactly zero.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ItemStats {
    pulls: u64,
    shift: f64,
    sum: Compensated,
    sum_sq: Compensated,
}

impl ItemStats {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn update(&mut self, reward: f64) -> Result<()> {
        if !(0.0..=1.0).contains(&reward) {
            return Err(Error::RewardOutOfRange(reward));
        }
        self.push(reward);
        Ok(())
    }

    #[inline]
    pub(crate) fn push(&mut self, reward: f64) {
        if self.pulls == 0 {
            self.shift = reward;
        }
        let d = reward - self.shift;
        self.pulls += 1;
        self.sum.add(d);
        self.sum_sq.add(d * d);
    }

    pub fn pulls(&self) -> u64 {
        self.pulls
    }

    /// Sum of observed rewards.
    pub fn sum(&self) -> f64 {
        self.pulls as f64 * self.shift + self.sum.value()
    }

    pub fn mean(&self) -> Option<f64> {
        (self.pulls > 0).then(|| self.shift + self.sum.value() / self.pulls as f64)
    }

    /// Population variance (divides by the pull count).
    pub fn variance(&self) -> Option<f64> {
        (self.pulls > 0).then(|| {
            let n = self.pulls as f64;
            let m1 = self.sum.value() / n;
            (self.sum_sq.value() / n - m1 * m1).max(0.0)
        })
    }
}

/// Estimates and confidence bounds of one item.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ItemBounds {
    pub mean: f64,
    pub variance: f64,
    pub u_mu: f64,
    pub l_mu: f64,
    pub u_var: f64,
    pub l_var: f64,
}

/// Bounds with the variance UCB clipped at `sigma_sq` and the LCB at 0.
pub fn item_bounds(stats: &ItemStats, cfg: &LilConfig, sigma_sq: f64) -> Result<ItemBounds> {
    if stats.pulls == 0 {
        return Err(Error::ZeroCount);
    }
    Ok(item_bounds_unchecked(stats, cfg, sigma_sq))
}

#[inline]
pub(crate) fn item_bounds_unchecked(
    stats: &ItemStats,
    cfg: &LilConfig,
    sigma_sq: f64,
) -> ItemBounds {
    let r = radii_unchecked(stats.pulls, cfg);
    let mean = stats.mean().unwrap_or(0.0);
    let var = stats.variance().unwrap_or(0.0);
    bounds_from(mean, var, r, sigma_sq)
}

#[inline]
fn bounds_from(mean: f64, var: f64, r: Radii, sigma_sq: f64) -> ItemBounds {
    ItemBounds {
        mean,
        variance: var,
        u_mu: mean + r.alpha,
        l_mu: mean - r.alpha,
        u_var: (var + r.beta_u).min(sigma_sq),
        l_var: (var - r.beta_l).max(0.0),
    }
}

/// Bounds of a solution: sums of its items' bounds.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SolutionBounds {
    pub u_mu: f64,
    pub l_mu: f64,
    pub u_var: f64,
    pub l_var: f64,
    pub mean: f64,
    pub variance: f64,
}

pub fn solution_bounds(items: &[Option<ItemBounds>], s: &Solution) -> Result<SolutionBounds> {
    let mut out = SolutionBounds::default();
    for &i in s.items() {
        let b = items
            .get(i)
            .ok_or(Error::ItemOutOfRange {
                index: i + 1,
                len: items.len(),
            })?
            .ok_or(Error::Unpulled(i + 1))?;
        out.u_mu += b.u_mu;
        out.l_mu += b.l_mu;
        out.u_var += b.u_var;
        out.l_var += b.l_var;
        out.mean += b.mean;
        out.variance += b.variance;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    // Reference values from tests/oracles/closed_forms.py (50-digit arithmetic).
    const LIL_100: f64 = 0.193_610_206_753_414_39;
    const XI_1E6: f64 = 0.018_423_840_311_346_09;
    const M_REF: f64 = 1231.777_894_901_653_3;

    #[test]
    fn lil_reference_value() {
        let v = lil(100, 0.01, 0.01).unwrap();
        assert!((v - LIL_100).abs() < 1e-14, "{v}");
        assert!(lil(0, 0.01, 0.01).is_err());
    }

    #[test]
    fn lil_negative_outer_log_is_infinite() {
        // ln(1.01)/0.5 < 1
        assert_eq!(lil(1, 0.5, 0.01).unwrap(), f64::INFINITY);
    }

    #[test]
    fn lil_monotone() {
        let a = lil(100, 0.01, 0.01).unwrap();
        assert!(lil(200, 0.01, 0.01).unwrap() < a);
        assert!(lil(100, 0.001, 0.01).unwrap() > a);
    }

    #[test]
    fn radii_reference() {
        let cfg = LilConfig::new(
            0.01,
            Omegas {
                omega_mu: 0.01,
                omega_v: 0.01,
                omega_v_prime: 0.01,
            },
        )
        .unwrap();
        let r = radii(100, &cfg).unwrap();
        assert!((r.beta_u - 0.580_830_620_260_243_2).abs() < 1e-13);
        assert_eq!(r.beta_u, r.beta_l);
        assert!((r.beta_u / r.alpha - 3.0).abs() < 1e-15);
    }

    #[test]
    fn xi_reference() {
        assert_eq!(xi(0.0, 0.01), 0.0);
        let v = xi(1e-6, 0.01);
        assert!((v / XI_1E6 - 1.0).abs() < 1e-12, "{v}");
        assert!(xi(1e-6, 0.01) < xi(2e-6, 0.01));
    }

    #[test]
    fn inversion_reference() {
        let m = lil_inversion_m(0.1, 1e-4, 1.0, 0.01);
        assert!((m / M_REF - 1.0).abs() < 1e-12, "{m}");
    }

    #[test]
    fn default_schedule() {
        let w = default_omegas(1000, 0.05).unwrap();
        assert_eq!(w.omega_mu, 1e-6);
        assert_eq!(w.omega_v_prime, 1e-6);
        assert!((w.omega_v - 5e-8).abs() < 1e-22);
        let w = default_omegas(1, 0.5).unwrap();
        assert_eq!((w.omega_mu, w.omega_v, w.omega_v_prime), (1.0, 0.5, 1.0));
    }

    #[test]
    fn stats_hand_examples() {
        let mut s = ItemStats::new();
        s.update(0.0).unwrap();
        s.update(1.0).unwrap();
        assert_eq!(s.mean(), Some(0.5));
        assert_eq!(s.variance(), Some(0.25));
        assert!(s.update(1.5).is_err());
        assert_eq!(s.pulls(), 2);

        let mut c = ItemStats::new();
        for _ in 0..1000 {
            c.update(0.3).unwrap();
            assert_eq!(c.variance(), Some(0.0));
        }
        assert_eq!(c.mean(), Some(0.3));
    }

    #[test]
    fn clipping() {
        let mut s = ItemStats::new();
        s.update(0.2).unwrap();
        s.update(0.8).unwrap();
        let cfg = LilConfig::for_horizon(100_000, 0.05, 0.01).unwrap();
        let b = item_bounds(&s, &cfg, 0.25).unwrap();
        assert_eq!(b.u_var, 0.25);
        assert_eq!(b.l_var, 0.0);
        assert!(item_bounds(&ItemStats::new(), &cfg, 0.25).is_err());

        let r = Radii {
            alpha: 0.0,
            beta_u: 0.05,
            beta_l: 0.05,
        };
        let b = bounds_from(0.5, 0.1, r, 0.25);
        assert!((b.u_var - 0.15).abs() < 1e-15);
    }

    #[test]
    fn solution_bounds_sum() {
        let b = ItemBounds {
            mean: 0.1,
            variance: 0.0,
            u_mu: 0.2,
            l_mu: 0.0,
            u_var: 0.25,
            l_var: 0.0,
        };
        let table = vec![Some(b), Some(b), Some(b), None];
        let s = solution_bounds(&table, &Solution::new(vec![0, 1, 2])).unwrap();
        assert!((s.u_var - 0.75).abs() < 1e-15);
        assert!(matches!(
            solution_bounds(&table, &Solution::new(vec![3])),
            Err(Error::Unpulled(4))
        ));
    }
}
