use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::solution::Solution;
use crate::error::{Error, Result};

/// How the solution family is generated.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum FamilyKind {
    /// Every nonempty subset of the items with at most K elements.
    AllSubsetsUpToK,
    /// Consecutive blocks of items ("paths"); members are the nonempty subsets of one path.
    KPath { path_sizes: Vec<usize> },
    /// A user-supplied list, which must be downward-closed.
    Explicit(Vec<Solution>),
}

/// The enumerated family in canonical order, with a flattened copy for fast scans.
#[derive(Clone, Debug)]
pub struct SolutionFamily {
    kind: FamilyKind,
    num_items: usize,
    max_size: usize,
    members: Vec<Solution>,
    lookup: HashMap<Solution, usize>,
    offsets: Vec<usize>,
    flat: Vec<usize>,
}

impl SolutionFamily {
    pub fn new(kind: FamilyKind, num_items: usize, max_size: usize) -> Result<Self> {
        let members = enumerate_solutions(&kind, num_items, max_size)?;
        let lookup = members
            .iter()
            .enumerate()
            .map(|(k, s)| (s.clone(), k))
            .collect();
        let mut offsets = Vec::with_capacity(members.len() + 1);
        let mut flat = Vec::new();
        offsets.push(0);
        for s in &members {
            flat.extend_from_slice(s.items());
            offsets.push(flat.len());
        }
        Ok(SolutionFamily {
            kind,
            num_items,
            max_size,
            members,
            lookup,
            offsets,
            flat,
        })
    }

    pub fn kind(&self) -> &FamilyKind {
        &self.kind
    }

    pub fn num_items(&self) -> usize {
        self.num_items
    }

    /// The cardinality bound K.
    pub fn max_size(&self) -> usize {
        self.max_size
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Solution] {
        &self.members
    }

    pub fn get(&self, k: usize) -> &Solution {
        &self.members[k]
    }

    pub fn index_of(&self, s: &Solution) -> Option<usize> {
        self.lookup.get(s).copied()
    }

    pub fn contains(&self, s: &Solution) -> bool {
        self.lookup.contains_key(s)
    }

    /// Items of member `k` without going through `Solution`.
    #[inline]
    pub fn items_of(&self, k: usize) -> &[usize] {
        &self.flat[self.offsets[k]..self.offsets[k + 1]]
    }

    /// Largest size of any member.
    pub fn largest_member(&self) -> usize {
        self.members.iter().map(Solution::len).max().unwrap_or(0)
    }
}

/// Largest family the exhaustive oracle will enumerate.
pub const MAX_FAMILY_SIZE: u64 = 1 << 22;

/// `Σ_{k=1..=m} C(n, k)`, saturating.
fn count_up_to(n: usize, m: usize) -> u64 {
    let mut c: u64 = 1;
    let mut total: u64 = 0;
    for k in 1..=m.min(n) {
        c = match c.checked_mul((n - k + 1) as u64) {
            Some(v) => v / k as u64,
            None => return u64::MAX,
        };
        total = total.saturating_add(c);
    }
    total
}

/// Lists the family's members in canonical order (cardinality, then lexicographic).
pub fn enumerate_solutions(
    kind: &FamilyKind,
    num_items: usize,
    max_size: usize,
) -> Result<Vec<Solution>> {
    if num_items == 0 {
        return Err(Error::InvalidInstance("need at least one item".into()));
    }
    if max_size == 0 {
        return Err(Error::InvalidInstance("K must be at least 1".into()));
    }
    let count = match kind {
        FamilyKind::AllSubsetsUpToK => count_up_to(num_items, max_size),
        FamilyKind::KPath { path_sizes } => path_sizes
            .iter()
            .fold(0u64, |acc, &s| acc.saturating_add(count_up_to(s, s))),
        FamilyKind::Explicit(list) => list.len() as u64,
    };
    if count > MAX_FAMILY_SIZE {
        return Err(Error::InvalidInstance(format!(
            "family would have more than {MAX_FAMILY_SIZE} members"
        )));
    }
    let mut out = match kind {
        FamilyKind::AllSubsetsUpToK => {
            let items: Vec<usize> = (0..num_items).collect();
            let mut out = Vec::new();
            for size in 1..=max_size.min(num_items) {
                push_combinations(&items, size, &mut out);
            }
            out
        }
        FamilyKind::KPath { path_sizes } => {
            let total: usize = path_sizes.iter().sum();
            if total != num_items {
                return Err(Error::InvalidInstance(format!(
                    "path sizes sum to {total} but there are {num_items} items"
                )));
            }
            let mut out = Vec::new();
            let mut start = 0;
            for &size in path_sizes {
                if size == 0 {
                    return Err(Error::InvalidInstance("empty path".into()));
                }
                if size > max_size {
                    return Err(Error::InvalidInstance(format!(
                        "path of {size} items exceeds K = {max_size}"
                    )));
                }
                let path: Vec<usize> = (start..start + size).collect();
                for k in 1..=size {
                    push_combinations(&path, k, &mut out);
                }
                start += size;
            }
            out
        }
        FamilyKind::Explicit(list) => {
            let mut out: Vec<Solution> = Vec::with_capacity(list.len());
            for s in list {
                if s.is_empty() {
                    return Err(Error::InvalidInstance(
                        "explicit family contains the empty set".into(),
                    ));
                }
                if let Some(&i) = s.items().iter().find(|&&i| i >= num_items) {
                    return Err(Error::ItemOutOfRange {
                        index: i + 1,
                        len: num_items,
                    });
                }
                if s.len() > max_size {
                    return Err(Error::InvalidInstance(format!(
                        "member {s} has more than K = {max_size} items"
                    )));
                }
                out.push(s.clone());
            }
            out.sort_by(Solution::canonical_cmp);
            out.dedup();
            check_downward_closed(&out)?;
            out
        }
    };
    out.sort_by(Solution::canonical_cmp);
    Ok(out)
}

fn check_downward_closed(members: &[Solution]) -> Result<()> {
    let set: std::collections::HashSet<&Solution> = members.iter().collect();
    for m in members {
        // Checking the maximal proper subsets suffices by induction.
        if m.len() < 2 {
            continue;
        }
        for skip in 0..m.len() {
            let sub: Vec<usize> = m
                .items()
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != skip)
                .map(|(_, &i)| i)
                .collect();
            let sub = Solution::new(sub);
            if !set.contains(&sub) {
                return Err(Error::NotDownwardClosed {
                    member: m.to_string(),
                    missing: sub.to_string(),
                });
            }
        }
    }
    Ok(())
}

fn push_combinations(pool: &[usize], k: usize, out: &mut Vec<Solution>) {
    let n = pool.len();
    if k == 0 || k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(Solution::new(idx.iter().map(|&j| pool[j]).collect()));
        let mut pos = k;
        while pos > 0 && idx[pos - 1] == n - k + pos - 1 {
            pos -= 1;
        }
        if pos == 0 {
            return;
        }
        idx[pos - 1] += 1;
        for j in pos..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sol(v: &[usize]) -> Solution {
        Solution::from_one_based(v).unwrap()
    }

    #[test]
    fn table_one_family_has_175_members() {
        let f = enumerate_solutions(&FamilyKind::AllSubsetsUpToK, 10, 3).unwrap();
        assert_eq!(f.len(), 175);
        assert_eq!(f[0], sol(&[1]));
        assert_eq!(f[10], sol(&[1, 2]));
        assert_eq!(f[174], sol(&[8, 9, 10]));
    }

    #[test]
    fn single_item() {
        let f = enumerate_solutions(&FamilyKind::AllSubsetsUpToK, 1, 2).unwrap();
        assert_eq!(f, vec![sol(&[1])]);
    }

    #[test]
    fn two_paths_of_two() {
        let kind = FamilyKind::KPath {
            path_sizes: vec![2, 2],
        };
        let f = enumerate_solutions(&kind, 4, 2).unwrap();
        assert_eq!(
            f,
            vec![
                sol(&[1]),
                sol(&[2]),
                sol(&[3]),
                sol(&[4]),
                sol(&[1, 2]),
                sol(&[3, 4])
            ]
        );
    }

    #[test]
    fn explicit_must_be_closed() {
        let kind = FamilyKind::Explicit(vec![sol(&[1]), sol(&[1, 2])]);
        let err = enumerate_solutions(&kind, 2, 2).unwrap_err();
        assert!(err.to_string().contains("{2}"), "{err}");

        let ok = FamilyKind::Explicit(vec![sol(&[1, 2]), sol(&[2]), sol(&[1]), sol(&[1])]);
        assert_eq!(enumerate_solutions(&ok, 2, 2).unwrap().len(), 3);
    }

    #[test]
    fn explicit_rejects_out_of_range() {
        let kind = FamilyKind::Explicit(vec![sol(&[5])]);
        assert!(matches!(
            enumerate_solutions(&kind, 2, 2),
            Err(Error::ItemOutOfRange { index: 5, len: 2 })
        ));
    }

    #[test]
    fn flat_view_matches_members() {
        let f = SolutionFamily::new(FamilyKind::AllSubsetsUpToK, 5, 3).unwrap();
        for (k, s) in f.members().iter().enumerate() {
            assert_eq!(f.items_of(k), s.items());
            assert_eq!(f.index_of(s), Some(k));
        }
    }
}
