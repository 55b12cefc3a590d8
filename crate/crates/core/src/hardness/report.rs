use serde::{Deserialize, Serialize};

use super::constants::HardnessConstants;
use super::functions::{g_eval, h_eval, h_exact, GClass, HardnessContext, OmegaCombos};
use crate::confidence::{default_omegas, ln_ln_plus, xi, Omegas};
use crate::engine::absolutely_safe_threshold;
use crate::error::{Error, Result};
use crate::model::{compute_gaps, GapTable, Instance, SafetyPartition, Solution, SolutionClass};

/// One h summand: item `item` (1-based) contributes to `class` with `gap`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassTerm {
    pub item: usize,
    pub class: GClass,
    pub gap: f64,
}

/// A summand dropped because the item belongs to no solution of that class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedTerm {
    pub item: usize,
    pub class: GClass,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HRow {
    pub r_prime: usize,
    /// H(r′) from the closed-form h bounds.
    pub h: f64,
    /// The same sum with every h replaced by its exact g sum.
    pub h_exact: f64,
    /// T′_r at r = r′ (0 at r′ = Q).
    pub t_prime: f64,
    /// Some summand sat on a boundary where several closed forms applied.
    pub boundary: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProblemIndependent {
    /// `√(K·L·T·ln T)`.
    pub exploration: f64,
    /// `L·K²/(Δᵛ_min)²·ln(1/δ)`.
    pub safety: f64,
    pub total: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegretBounds {
    pub reg1: f64,
    pub reg2: f64,
    pub reg3: f64,
    /// `T·μ⋆`.
    pub naive: f64,
    /// `min(naive, reg1 + reg2) + reg3`.
    pub total: f64,
    /// Unit-constant shape, not a certified bound.
    pub problem_independent: ProblemIndependent,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HardnessReport {
    pub horizon: u64,
    pub delta: f64,
    pub epsilon: f64,
    pub k: usize,
    pub num_items: usize,
    pub q: usize,
    pub big_q: usize,
    pub mu_star: f64,
    pub optimal: Solution,
    pub optimal_var_gap: f64,
    pub omegas: Omegas,
    pub combos: OmegaCombos,
    pub omega_bar: f64,
    pub constants: HardnessConstants,
    pub terms: Vec<ClassTerm>,
    pub skipped: Vec<SkippedTerm>,
    pub rows: Vec<HRow>,
    pub bounds: RegretBounds,
    /// Leading-order H with unit constants.
    pub asymptotic_h: f64,
    pub warnings: Vec<String>,
}

impl HardnessReport {
    /// H(1), the hardness parameter.
    pub fn h1(&self) -> f64 {
        self.rows.first().map_or(0.0, |r| r.h)
    }

    pub fn is_non_increasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].h <= w[0].h)
    }
}

/// Everything the evaluators need about one instance.
pub struct HardnessInput<'a> {
    pub instance: &'a Instance,
    pub partition: SafetyPartition,
    pub gaps: GapTable,
    pub ctx: HardnessContext,
    pub q: usize,
}

impl<'a> HardnessInput<'a> {
    pub fn new(
        instance: &'a Instance,
        horizon: u64,
        delta: f64,
        epsilon: f64,
        omegas: Option<Omegas>,
    ) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "epsilon must lie in (0, 1), got {epsilon}"
            )));
        }
        let (partition, gaps) = compute_gaps(instance, horizon, delta)?;
        let omegas = match omegas {
            Some(w) => w,
            None => default_omegas(horizon, delta)?,
        };
        let (q, big_q) = absolutely_safe_threshold(instance);
        let ctx = HardnessContext::new(
            instance.k(),
            big_q,
            instance.sigma_bar_sq(),
            omegas,
            epsilon,
        )?;
        Ok(HardnessInput {
            instance,
            partition,
            gaps,
            ctx,
            q,
        })
    }

    /// `ω̄ = min(1, √(ln(1/ω_v′)/ln(1/ω_μ)))`.
    pub fn omega_bar(&self) -> f64 {
        let w = &self.ctx.omegas;
        ((1.0 / w.omega_v_prime).ln() / (1.0 / w.omega_mu).ln())
            .sqrt()
            .min(1.0)
    }

    /// Per-item composite gaps for every class, plus the skipped summands.
    pub fn terms(&self) -> (Vec<ClassTerm>, Vec<SkippedTerm>) {
        let fam = self.instance.family();
        let w = &self.ctx.omegas;
        let sl_mu = (1.0 / w.omega_mu).ln().sqrt();
        let sl_v = (1.0 / w.omega_v).ln().sqrt();
        let sl_vp = (1.0 / w.omega_v_prime).ln().sqrt();
        let n = self.instance.num_items();
        let mut sb: Vec<Option<f64>> = vec![None; n];
        let mut scb: Vec<Option<f64>> = vec![None; n];
        for k in 0..fam.len() {
            let g = self.gaps.solutions[k];
            let slot = match self.partition.class_of(k) {
                SolutionClass::SafeSuboptimal => {
                    (&mut sb, (g.mean_gap / sl_mu).max(g.var_gap / (3.0 * sl_v)))
                }
                SolutionClass::UnsafeSuboptimal => (
                    &mut scb,
                    (g.mean_gap / sl_mu).max(g.var_gap / (3.0 * sl_vp)),
                ),
                _ => continue,
            };
            for &i in fam.items_of(k) {
                slot.0[i] = Some(slot.0[i].map_or(slot.1, |v: f64| v.min(slot.1)));
            }
        }

        let mut terms = Vec::new();
        let mut skipped = Vec::new();
        for &i in self.partition.optimal_solution.items() {
            terms.push(ClassTerm {
                item: i + 1,
                class: GClass::Optimal,
                gap: self.gaps.optimal_var_gap,
            });
        }
        for i in 0..n {
            let per = [
                (GClass::SafeSuboptimal, sb[i]),
                (GClass::Risky, self.gaps.items[i].risky_var_min),
                (GClass::UnsafeSuboptimal, scb[i]),
            ];
            for (class, gap) in per {
                match gap {
                    Some(gap) => terms.push(ClassTerm {
                        item: i + 1,
                        class,
                        gap,
                    }),
                    None => skipped.push(SkippedTerm { item: i + 1, class }),
                }
            }
        }
        (terms, skipped)
    }

    /// H(r′) from the closed-form h bounds, with the boundary flag.
    pub fn hardness_h(&self, r_prime: usize, terms: &[ClassTerm]) -> Result<(f64, bool)> {
        let mut total = 0.0;
        let mut boundary = false;
        for t in terms {
            let h = h_eval(t.class, r_prime, t.gap, &self.ctx)?;
            total += h.value;
            boundary |= h.boundary;
        }
        Ok((total, boundary))
    }

    pub fn hardness_h_exact(&self, r_prime: usize, terms: &[ClassTerm]) -> Result<f64> {
        terms
            .iter()
            .map(|t| h_exact(t.class, r_prime, t.gap, &self.ctx))
            .sum::<Result<f64>>()
            .map(|v| v + 0.0)
    }

    /// T′_r for `r ∈ [1, Q]`, with T′_Q = 0.
    pub fn t_prime(&self, r: usize, terms: &[ClassTerm]) -> Result<f64> {
        if r == 0 || r > self.ctx.big_q {
            return Err(Error::InvalidParameter(format!("r = {r} outside [1, Q]")));
        }
        if r == self.ctx.big_q {
            return Ok(0.0);
        }
        terms
            .iter()
            .map(|t| g_eval(t.class, r, t.gap, &self.ctx))
            .sum::<Result<f64>>()
            .map(|v| v + 0.0)
    }

    /// Suboptimality term with explicit constants.
    pub fn reg1(&self) -> f64 {
        let fam = self.instance.family();
        let w = &self.ctx.omegas;
        let c = &self.ctx.constants;
        let cgk = c.c * c.gamma * self.instance.k() as f64;
        let wbar = self.omega_bar();
        let n = self.instance.num_items();
        let mut sb_min: Vec<Option<f64>> = vec![None; n];
        let mut scb_min: Vec<Option<f64>> = vec![None; n];
        let mut scb_bar: Vec<Option<f64>> = vec![None; n];
        let mut tension: Vec<Option<f64>> = vec![None; n];
        for k in 0..fam.len() {
            let g = self.gaps.solutions[k];
            match self.partition.class_of(k) {
                SolutionClass::SafeSuboptimal => {
                    for &i in fam.items_of(k) {
                        sb_min[i] = Some(sb_min[i].map_or(g.mean_gap, |v| v.min(g.mean_gap)));
                    }
                }
                SolutionClass::UnsafeSuboptimal => {
                    let m = (wbar * g.mean_gap).max(g.var_gap / 3.0);
                    let ratio = (g.mean_gap / m).powi(2);
                    for &i in fam.items_of(k) {
                        scb_min[i] = Some(scb_min[i].map_or(g.mean_gap, |v| v.min(g.mean_gap)));
                        scb_bar[i] = Some(scb_bar[i].map_or(m, |v| v.min(m)));
                        tension[i] = Some(tension[i].map_or(ratio, |v| v.max(ratio)));
                    }
                }
                _ => {}
            }
        }
        let lmu = (1.0 / w.omega_mu).ln();
        let lvp = (1.0 / w.omega_v_prime).ln();
        let mut total = 0.0;
        for i in 0..n {
            if !self.partition.optimal_solution.contains(i) {
                if let Some(d) = sb_min[i] {
                    total += 2.0 * cgk / d * (2.0 * lmu + ln_ln_plus(1.0 / (d * d)) + c.d);
                }
            }
            if let (Some(d), Some(bar), Some(ci)) = (scb_min[i], scb_bar[i], tension[i]) {
                total += 2.0 * ci * cgk / d * (2.0 * lvp + ln_ln_plus(1.0 / (bar * bar)) + c.d);
            }
        }
        total
    }

    pub fn bounds(&self, h1: f64) -> RegretBounds {
        let t = self.gaps.horizon as f64;
        let mu = self.partition.mu_star;
        let l = self.instance.num_items() as f64;
        let k = self.instance.k() as f64;
        let w = &self.ctx.omegas;
        let eps = self.ctx.epsilon;
        let reg1 = self.reg1();
        let reg2 = 2.0 * mu * h1;
        let reg3 = 2.0
            * mu
            * l
            * (1.0
                + t * (xi(w.omega_mu, eps)
                    + 2.0 * xi(w.omega_v, eps)
                    + 2.0 * xi(w.omega_v_prime, eps)));
        let naive = t * mu;
        let exploration = (k * l * t * t.ln()).sqrt();
        let dv = self.gaps.min_var_gap;
        let safety = l * k * k / (dv * dv) * (1.0 / self.gaps.delta).ln();
        RegretBounds {
            reg1,
            reg2,
            reg3,
            naive,
            total: naive.min(reg1 + reg2) + reg3,
            problem_independent: ProblemIndependent {
                exploration,
                safety,
                total: exploration + safety,
            },
        }
    }

    /// Leading-order hardness with unit constants and `λ = ln(1/δ)/ln T`.
    pub fn asymptotic_h(&self) -> f64 {
        let fam = self.instance.family();
        let ln_t = (self.gaps.horizon as f64).ln();
        let scale = ln_t + (1.0 / self.gaps.delta).ln();
        let k = self.instance.k() as f64;
        let n = self.instance.num_items();
        let mut per_item: Vec<Option<f64>> = vec![None; n];
        for kk in 0..fam.len() {
            if self.partition.class_of(kk) != SolutionClass::SafeSuboptimal {
                continue;
            }
            let g = self.gaps.solutions[kk];
            let v = (ln_t / (g.mean_gap * g.mean_gap)).min(scale / (g.var_gap * g.var_gap));
            for &i in fam.items_of(kk) {
                per_item[i] = Some(per_item[i].map_or(v, |p| p.max(v)));
            }
        }
        let dv = self.gaps.optimal_var_gap;
        let mut sum = 0.0;
        for (i, g) in self.gaps.items.iter().enumerate() {
            if let Some(r) = g.risky_var_min {
                sum += ln_t / (r * r);
            }
            sum += per_item[i].unwrap_or(0.0) + g.phi.unwrap_or(0.0);
        }
        scale * k * k / (dv * dv) + k * sum
    }
}

/// H(r′) for an instance at the default confidence schedule.
pub fn hardness_h(
    r_prime: usize,
    instance: &Instance,
    horizon: u64,
    delta: f64,
    epsilon: f64,
) -> Result<f64> {
    let input = HardnessInput::new(instance, horizon, delta, epsilon, None)?;
    let (terms, _) = input.terms();
    Ok(input.hardness_h(r_prime, &terms)?.0)
}

/// Regret bound terms for an instance at the default confidence schedule.
pub fn regret_bounds(
    instance: &Instance,
    horizon: u64,
    delta: f64,
    epsilon: f64,
) -> Result<RegretBounds> {
    Ok(hardness_report(instance, horizon, delta, epsilon, None)?.bounds)
}

pub fn hardness_report(
    instance: &Instance,
    horizon: u64,
    delta: f64,
    epsilon: f64,
    omegas: Option<Omegas>,
) -> Result<HardnessReport> {
    let input = HardnessInput::new(instance, horizon, delta, epsilon, omegas)?;
    let (terms, skipped) = input.terms();
    let big_q = input.ctx.big_q;
    let mut rows = Vec::with_capacity(big_q);
    for r in 1..=big_q {
        let (h, boundary) = input.hardness_h(r, &terms)?;
        rows.push(HRow {
            r_prime: r,
            h,
            h_exact: input.hardness_h_exact(r, &terms)?,
            t_prime: input.t_prime(r, &terms)?,
            boundary,
        });
    }
    let h1 = rows[0].h;
    let mut warnings = instance.warnings().to_vec();
    warnings.extend(input.partition.warnings.iter().cloned());
    let w = input.ctx.omegas;
    if w.omega_mu > w.omega_v_prime {
        warnings.push(format!(
            "omega_mu = {} exceeds omega_v' = {}; the tension weight is capped at 1",
            w.omega_mu, w.omega_v_prime
        ));
    }
    if rows.iter().any(|r| r.boundary) {
        warnings.push(
            "some h terms sat on a case boundary; the smallest applicable case was used".into(),
        );
    }
    Ok(HardnessReport {
        horizon,
        delta,
        epsilon,
        k: instance.k(),
        num_items: instance.num_items(),
        q: input.q,
        big_q,
        mu_star: input.partition.mu_star,
        optimal: input.partition.optimal_solution.clone(),
        optimal_var_gap: input.gaps.optimal_var_gap,
        omegas: w,
        combos: input.ctx.combos,
        omega_bar: input.omega_bar(),
        constants: input.ctx.constants,
        bounds: input.bounds(h1),
        asymptotic_h: input.asymptotic_h(),
        terms,
        skipped,
        rows,
        warnings,
    })
}
