use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A set of item indices, stored sorted and 0-based.
///
/// Displayed and serialized 1-based, e.g. `{1,3,4}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Solution(Vec<usize>);

impl Solution {
    /// Builds a solution from 0-based indices (sorted, deduplicated).
    pub fn new(mut items: Vec<usize>) -> Self {
        items.sort_unstable();
        items.dedup();
        Solution(items)
    }

    /// Builds a solution from 1-based indices.
    pub fn from_one_based(items: &[usize]) -> Result<Self> {
        let mut out = Vec::with_capacity(items.len());
        for &i in items {
            if i == 0 {
                return Err(Error::InvalidParameter(
                    "item indices are 1-based; found 0".into(),
                ));
            }
            out.push(i - 1);
        }
        Ok(Solution::new(out))
    }

    pub fn items(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, item: usize) -> bool {
        self.0.binary_search(&item).is_ok()
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }

    /// Cardinality first, then lexicographic item order.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }

    /// Compact file encoding: 1-based indices joined by `;`.
    pub fn encode(&self) -> String {
        let parts: Vec<String> = self.one_based().iter().map(|i| i.to_string()).collect();
        parts.join(";")
    }

    pub fn decode(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Solution(Vec::new()));
        }
        let mut items = Vec::new();
        for part in s.split(';') {
            let v: usize = part
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad item index {part:?} in solution {s:?}")))?;
            items.push(v);
        }
        Solution::from_one_based(&items).map_err(|_| Error::Parse(format!("bad solution {s:?}")))
    }
}

impl fmt::Display for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

impl Serialize for Solution {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_based().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Solution {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        Solution::from_one_based(&v).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_is_one_based() {
        assert_eq!(Solution::new(vec![3, 0, 2]).to_string(), "{1,3,4}");
    }

    #[test]
    fn encode_round_trip() {
        let s = Solution::new(vec![0, 6]);
        assert_eq!(s.encode(), "1;7");
        assert_eq!(Solution::decode("1;7").unwrap(), s);
        assert!(Solution::decode("0;1").is_err());
        assert!(Solution::decode("x").is_err());
    }

    #[test]
    fn canonical_order() {
        let a = Solution::new(vec![5]);
        let b = Solution::new(vec![0, 1]);
        assert_eq!(a.canonical_cmp(&b), Ordering::Less);
        let c = Solution::new(vec![0, 2]);
        assert_eq!(b.canonical_cmp(&c), Ordering::Less);
    }
}
