use crate::model::{Instance, Solution};

/// `q = ⌊σ̄²/σ²⌋` (at least 1) and `Q = ⌈K/q⌉`.
///
/// When the budget does not exceed σ², no set is absolutely safe; `q` is
/// clamped to 1 so that initialization still pulls singletons.
pub fn absolutely_safe_threshold(instance: &Instance) -> (usize, usize) {
    thresholds(instance.sigma_bar_sq(), instance.sigma_sq(), instance.k())
}

pub fn thresholds(sigma_bar_sq: f64, sigma_sq: f64, k: usize) -> (usize, usize) {
    let q = ((sigma_bar_sq / sigma_sq).floor() as usize).max(1);
    (q, k.div_ceil(q))
}

/// Slack in the budget test so that decimal inputs such as 0.2 + 0.4 ≤ 0.6
/// compare as they would in exact arithmetic.
pub const SPLIT_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct SplitResult {
    pub parts: Vec<Solution>,
}

impl SplitResult {
    pub fn n_p(&self) -> usize {
        self.parts.len()
    }
}

/// Greedy-Split: walk the items in ascending order, adding each to the open
/// sub-solution while its summed variance UCB stays within the budget.
///
/// `u_var` is indexed by item.
pub fn greedy_split(items: &[usize], u_var: &[f64], sigma_bar_sq: f64) -> SplitResult {
    let mut parts = Vec::new();
    split_into(items, u_var, sigma_bar_sq, &mut parts);
    SplitResult {
        parts: parts.into_iter().map(Solution::new).collect(),
    }
}

pub(crate) fn split_into(
    items: &[usize],
    u_var: &[f64],
    sigma_bar_sq: f64,
    parts: &mut Vec<Vec<usize>>,
) {
    parts.clear();
    let mut sorted = items.to_vec();
    sorted.sort_unstable();
    let mut current: Vec<usize> = Vec::new();
    let mut acc = 0.0;
    for i in sorted {
        let u = u_var[i];
        // An item that alone exceeds the budget still gets its own part
        // rather than leaving an empty one behind.
        if current.is_empty() || acc + u <= sigma_bar_sq + SPLIT_TOL {
            current.push(i);
            acc += u;
        } else {
            parts.push(std::mem::take(&mut current));
            current.push(i);
            acc = u;
        }
    }
    if !current.is_empty() {
        parts.push(current);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_traced_split() {
        let u = [0.3, 0.3, 0.2, 0.4, 0.25];
        let r = greedy_split(&[0, 1, 2, 3, 4], &u, 0.6);
        assert_eq!(
            r.parts,
            vec![
                Solution::new(vec![0, 1]),
                Solution::new(vec![2, 3]),
                Solution::new(vec![4])
            ]
        );
        assert_eq!(r.n_p(), 3);
    }

    #[test]
    fn fits_in_one() {
        let u = [0.1, 0.2, 0.25];
        assert_eq!(greedy_split(&[0, 1, 2], &u, 0.6).n_p(), 1);
    }

    #[test]
    fn forced_three_way() {
        let u = [0.3, 0.3, 0.3];
        let r = greedy_split(&[0, 1, 2], &u, 0.4);
        assert_eq!(r.n_p(), 3);
        assert_eq!(thresholds(0.4, 0.25, 3), (1, 3));
    }

    #[test]
    fn threshold_arithmetic() {
        assert_eq!(thresholds(0.6, 0.25, 3), (2, 2));
        assert_eq!(thresholds(0.751, 0.25, 3), (3, 1));
        assert_eq!(thresholds(0.14, 0.25, 3), (1, 3));
    }
}
