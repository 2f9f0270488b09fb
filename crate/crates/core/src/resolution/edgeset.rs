use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Largest base edge count an [`EdgeSet`] can index.
pub const MAX_EDGES: usize = 128;

/// A set of base edges (by canonical index) packed into 128 bits.
///
/// Ordering is lexicographic on the ascending index lists, so the empty set
/// is least and `{0} < {0, 1} < {1}`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct EdgeSet(u128);

impl EdgeSet {
    pub const EMPTY: EdgeSet = EdgeSet(0);

    pub fn from_bits(bits: u128) -> Self {
        Self(bits)
    }

    pub fn singleton(e: usize) -> Self {
        Self(1 << e)
    }

    pub fn from_indices(indices: &[usize]) -> Self {
        Self(indices.iter().fold(0u128, |m, &e| m ^ (1 << e)))
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, e: usize) -> bool {
        self.0 >> e & 1 == 1
    }

    pub fn sym_diff(self, other: Self) -> Self {
        Self(self.0 ^ other.0)
    }

    pub fn union(self, other: Self) -> Self {
        Self(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        Self(self.0 & other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let e = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(e)
        })
    }

    pub fn indices(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `{0..m}` with at most `k` elements, in ascending order.
    pub fn all_up_to(m: usize, k: usize) -> Vec<EdgeSet> {
        fn rec(m: usize, k: usize, start: usize, cur: u128, out: &mut Vec<EdgeSet>) {
            out.push(EdgeSet(cur));
            if k == 0 {
                return;
            }
            for e in start..m {
                rec(m, k - 1, e + 1, cur | 1 << e, out);
            }
        }
        let mut out = Vec::new();
        rec(m, k, 0, 0, &mut out);
        out
    }
}

impl Ord for EdgeSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        let p = diff.trailing_zeros();
        let above = |x: u128| if p == 127 { 0 } else { x >> (p + 1) };
        // the set holding `p` continues with `p`; the other continues above
        // `p` or has ended
        if self.0 >> p & 1 == 1 {
            if above(other.0) == 0 {
                Ordering::Greater
            } else {
                Ordering::Less
            }
        } else if above(self.0) == 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for EdgeSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for EdgeSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.indices().serialize(s)
    }
}

impl<'de> Deserialize<'de> for EdgeSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<usize> = Vec::deserialize(d)?;
        if let Some(&bad) = v.iter().find(|&&e| e >= MAX_EDGES) {
            return Err(serde::de::Error::custom(format!("edge index {bad} out of range")));
        }
        Ok(EdgeSet::from_indices(&v))
    }
}
