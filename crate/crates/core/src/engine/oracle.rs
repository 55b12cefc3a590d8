use crate::model::SolutionFamily;

/// Index of the member maximizing Σ U^μ among those with Σ Lᵛ below the budget.
///
/// Exhaustive scan; the first maximizer in canonical order wins ties.
pub fn oracle_select(
    family: &SolutionFamily,
    u_mu: &[f64],
    l_var: &[f64],
    sigma_bar_sq: f64,
) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for k in 0..family.len() {
        let items = family.items_of(k);
        let mut lv = 0.0;
        let mut um = 0.0;
        for &i in items {
            lv += l_var[i];
            um += u_mu[i];
        }
        if lv < sigma_bar_sq && best.is_none_or(|(_, b)| um > b) {
            best = Some((k, um));
        }
    }
    best.map(|(k, _)| k)
}

/// Unconstrained argmax of Σ U^μ over the family.
pub fn unconstrained_select(family: &SolutionFamily, u_mu: &[f64]) -> usize {
    let mut best = (0, f64::NEG_INFINITY);
    for k in 0..family.len() {
        let um: f64 = family.items_of(k).iter().map(|&i| u_mu[i]).sum();
        if um > best.1 {
            best = (k, um);
        }
    }
    best.0
}

/// Initialization choice: among members of size at most `max_size`, the one
/// covering most items with fewer than `min_pulls` pulls. Ties prefer the
/// larger set, then canonical order. `None` once every item is covered.
pub fn init_select(
    family: &SolutionFamily,
    pulls: &[u64],
    min_pulls: u64,
    max_size: usize,
) -> Option<usize> {
    let mut best: Option<(usize, usize, usize)> = None;
    for k in 0..family.len() {
        let items = family.items_of(k);
        if items.len() > max_size {
            continue;
        }
        let c = items.iter().filter(|&&i| pulls[i] < min_pulls).count();
        if c == 0 {
            continue;
        }
        if best.is_none_or(|(_, bc, bl)| (c, items.len()) > (bc, bl)) {
            best = Some((k, c, items.len()));
        }
    }
    best.map(|(k, _, _)| k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{FamilyKind, Solution};

    fn fam(l: usize, k: usize) -> SolutionFamily {
        SolutionFamily::new(FamilyKind::AllSubsetsUpToK, l, k).unwrap()
    }

    #[test]
    fn init_examples() {
        let f = fam(10, 3);
        let k = init_select(&f, &[0; 10], 2, 2).unwrap();
        assert_eq!(f.get(k), &Solution::new(vec![0, 1]));

        let mut pulls = [2u64; 10];
        pulls[6] = 1;
        let k = init_select(&f, &pulls, 2, 2).unwrap();
        assert_eq!(f.get(k), &Solution::new(vec![0, 6]));

        assert_eq!(init_select(&f, &[2; 10], 2, 2), None);
    }

    #[test]
    fn symmetric_bounds_pick_first_k_set() {
        let f = fam(5, 3);
        let k = oracle_select(&f, &[0.5; 5], &[0.0; 5], 1.0).unwrap();
        assert_eq!(f.get(k), &Solution::new(vec![0, 1, 2]));
    }

    #[test]
    fn excluded_when_lower_variance_bound_too_high() {
        let f = fam(3, 2);
        // {1,2} has the largest mean UCB but Lᵛ = 0.5 ≥ 0.45.
        let k = oracle_select(&f, &[0.9, 0.8, 0.1], &[0.25, 0.25, 0.0], 0.45).unwrap();
        assert_eq!(f.get(k), &Solution::new(vec![0, 2]));
    }
}
