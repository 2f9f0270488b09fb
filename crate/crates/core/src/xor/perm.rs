use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An injective partial map between the vertex sets of two graphs.
///
/// The bottom element is represented as `None` wherever an operation can
/// produce it (see [`PartialIso::meet`]).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PartialIso {
    map: BTreeMap<usize, usize>,
}

impl PartialIso {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn single(i: usize, target: usize) -> Self {
        Self { map: BTreeMap::from([(i, target)]) }
    }

    pub fn from_pairs(pairs: &[(usize, usize)]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for &(i, t) in pairs {
            if map.insert(i, t).is_some_and(|old| old != t) {
                return Err(Error::InvalidParameter(format!("vertex {i} mapped twice")));
            }
        }
        let images: std::collections::BTreeSet<usize> = map.values().copied().collect();
        if images.len() != map.len() {
            return Err(Error::InvalidParameter("two vertices share an image".into()));
        }
        Ok(Self { map })
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<usize> {
        self.map.get(&i).copied()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.map.iter().map(|(&a, &b)| (a, b))
    }

    pub fn domain(&self) -> impl Iterator<Item = usize> + '_ {
        self.map.keys().copied()
    }

    /// Both conditions of consistency: agreement on the shared domain and
    /// no two different sources with the same image.
    pub fn is_consistent_with(&self, other: &Self) -> bool {
        let mut images: BTreeMap<usize, usize> = self.map.iter().map(|(&a, &b)| (b, a)).collect();
        for (&i, &t) in &other.map {
            if let Some(&mine) = self.map.get(&i) {
                if mine != t {
                    return false;
                }
            }
            match images.insert(t, i) {
                Some(src) if src != i => return false,
                _ => {}
            }
        }
        true
    }

    /// `self ∧ other`, or `None` (bottom) when inconsistent.
    pub fn meet(&self, other: &Self) -> Option<Self> {
        if !self.is_consistent_with(other) {
            return None;
        }
        let mut map = self.map.clone();
        map.extend(other.map.iter().map(|(&a, &b)| (a, b)));
        Some(Self { map })
    }

    /// `self ∧ (i -> target)`.
    pub fn extend(&self, i: usize, target: usize) -> Option<Self> {
        self.meet(&Self::single(i, target))
    }

    /// Sorted pairs; a canonical cache key.
    pub fn key(&self) -> Vec<(usize, usize)> {
        self.pairs().collect()
    }
}

/// `a ∧ b` lifted to possibly-bottom operands.
pub fn meet_opt(a: Option<&PartialIso>, b: Option<&PartialIso>) -> Option<PartialIso> {
    a?.meet(b?)
}

impl fmt::Display for PartialIso {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (a, b)) in self.pairs().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}->{b}")?;
        }
        write!(f, "}}")
    }
}
