use pascomb::confidence::{
    default_omegas, item_bounds, lil, lil_inversion_m, radii, solution_bounds, xi, ItemStats,
    LilConfig, Omegas,
};
use pascomb::model::Solution;
use proptest::prelude::*;

fn cfg(w: f64) -> LilConfig {
    LilConfig::new(
        0.01,
        Omegas {
            omega_mu: w,
            omega_v: w,
            omega_v_prime: w,
        },
    )
    .unwrap()
}

#[test]
fn two_rewards() {
    let mut s = ItemStats::new();
    s.update(0.0).unwrap();
    s.update(1.0).unwrap();
    assert_eq!(s.mean(), Some(0.5));
    assert_eq!(s.variance(), Some(0.25));
}

#[test]
fn out_of_range_reward_rejected() {
    let mut s = ItemStats::new();
    assert!(s.update(1.5).is_err());
    assert!(s.update(f64::NAN).is_err());
    assert_eq!(s.pulls(), 0);
}

#[test]
fn unpulled_item_has_no_bounds() {
    assert!(item_bounds(&ItemStats::new(), &cfg(0.01), 0.25).is_err());
    assert!(solution_bounds(&[None], &Solution::new(vec![0])).is_err());
}

#[test]
fn radii_ratios() {
    let r = radii(100, &cfg(0.01)).unwrap();
    assert!((r.beta_u / r.alpha - 3.0).abs() < 1e-12);
    assert_eq!(r.beta_u, r.beta_l);
    assert!((r.beta_u - 0.58083062026024318182).abs() < 1e-12);
}

#[test]
fn schedule_examples() {
    let w = default_omegas(1000, 0.05).unwrap();
    assert_eq!((w.omega_mu, w.omega_v_prime), (1e-6, 1e-6));
    assert!((w.omega_v - 5e-8).abs() < 1e-20);
    let w = default_omegas(1, 0.5).unwrap();
    assert_eq!((w.omega_mu, w.omega_v, w.omega_v_prime), (1.0, 0.5, 1.0));
}

#[test]
fn inversion_threshold_is_sufficient() {
    for &x in &[0.05, 0.1, 0.3] {
        for &w in &[1e-6, 1e-3, 0.01] {
            for &u in &[0.5, 1.0] {
                let m = lil_inversion_m(x, w, u, 0.01);
                let t = m.ceil() as u64 + 1;
                assert!(u * x > lil(t, w, 0.01).unwrap(), "x={x} w={w} u={u} m={m}");
            }
        }
    }
}

#[test]
fn inversion_scaling() {
    let a = lil_inversion_m(0.1, 1e-4, 1.0, 0.01);
    let b = lil_inversion_m(0.05, 1e-4, 1.0, 0.01);
    assert!(b / a > 4.0 && b / a < 4.5);
    assert!(lil_inversion_m(0.1, 1e-6, 1.0, 0.01) > a);
}

#[test]
fn xi_monotone_from_zero() {
    assert_eq!(xi(0.0, 0.01), 0.0);
    let grid = [1e-9, 1e-6, 1e-3, 0.01, 0.1];
    assert!(grid.windows(2).all(|w| xi(w[0], 0.01) < xi(w[1], 0.01)));
}

#[test]
fn bounds_replay_bit_identical() {
    let rewards: Vec<f64> = (0..500)
        .map(|i| ((i * 7919) % 1000) as f64 / 1000.0)
        .collect();
    let run = || {
        let mut s = ItemStats::new();
        let mut out = Vec::new();
        for &r in &rewards {
            s.update(r).unwrap();
            let b = item_bounds(&s, &cfg(1e-4), 0.25).unwrap();
            out.push([b.u_mu, b.l_mu, b.u_var, b.l_var].map(f64::to_bits));
        }
        out
    };
    assert_eq!(run(), run());
}

proptest! {
    #[test]
    fn clipping_holds(rewards in prop::collection::vec(0.0f64..=1.0, 1..60), w in 1e-8f64..0.5) {
        let mut s = ItemStats::new();
        for r in rewards {
            s.update(r).unwrap();
            let b = item_bounds(&s, &cfg(w), 0.25).unwrap();
            prop_assert!(b.u_var <= 0.25 && b.l_var >= 0.0);
            prop_assert!(b.l_mu <= b.mean && b.mean <= b.u_mu);
            prop_assert!(b.l_var <= b.variance + 1e-15);
        }
    }

    #[test]
    fn lil_decreasing_in_t(t in 3u64..100_000, rho in 1e-8f64..0.1) {
        let a = lil(t, rho, 0.01).unwrap();
        let b = lil(2 * t, rho, 0.01).unwrap();
        prop_assert!(a.is_finite() && b < a);
    }

    #[test]
    fn lil_increasing_in_log_inverse_rho(t in 3u64..100_000, rho in 1e-8f64..0.1) {
        prop_assert!(lil(t, rho / 2.0, 0.01).unwrap() > lil(t, rho, 0.01).unwrap());
    }

    #[test]
    fn solution_bounds_additive(vals in prop::collection::vec(prop::collection::vec(0.0f64..=1.0, 2..8), 4)) {
        let c = cfg(0.01);
        let bounds: Vec<_> = vals.iter().map(|rs| {
            let mut s = ItemStats::new();
            for &r in rs { s.update(r).unwrap(); }
            Some(item_bounds(&s, &c, 0.25).unwrap())
        }).collect();
        let a = solution_bounds(&bounds, &Solution::new(vec![0, 1])).unwrap();
        let b = solution_bounds(&bounds, &Solution::new(vec![2, 3])).unwrap();
        let ab = solution_bounds(&bounds, &Solution::new(vec![0, 1, 2, 3])).unwrap();
        prop_assert!((ab.u_mu - a.u_mu - b.u_mu).abs() < 1e-12);
        prop_assert!((ab.l_var - a.l_var - b.l_var).abs() < 1e-12);
        let single = solution_bounds(&bounds, &Solution::new(vec![2])).unwrap();
        prop_assert_eq!(single.u_var, bounds[2].unwrap().u_var);
    }
}
