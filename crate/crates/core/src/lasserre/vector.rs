use std::collections::BTreeMap;

use crate::scalar::Scalar;
use crate::Rational;

/// A finitely supported vector indexed by class ids.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LasserreVector<T: Scalar = Rational> {
    coords: BTreeMap<usize, T>,
}

impl<T: Scalar> LasserreVector<T> {
    pub fn zero() -> Self {
        Self { coords: BTreeMap::new() }
    }

    pub fn basis(class: usize) -> Self {
        let mut v = Self::zero();
        v.accumulate(class, T::one());
        v
    }

    pub fn accumulate(&mut self, class: usize, c: T) {
        if c.is_zero() {
            return;
        }
        let entry = self.coords.entry(class).or_insert_with(T::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.coords.remove(&class);
        }
    }

    pub fn coordinate(&self, class: usize) -> T {
        self.coords.get(&class).cloned().unwrap_or_else(T::zero)
    }

    pub fn coords(&self) -> impl Iterator<Item = (usize, &T)> {
        self.coords.iter().map(|(&k, v)| (k, v))
    }

    pub fn support_len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (&k, v) in &other.coords {
            self.accumulate(k, v.clone());
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut out = Self::zero();
        for (&k, v) in &self.coords {
            out.accumulate(k, v.clone() * c.clone());
        }
        out
    }

    pub fn dot(&self, other: &Self) -> T {
        let (small, large) = if self.coords.len() <= other.coords.len() { (self, other) } else { (other, self) };
        small.coords.iter().fold(T::zero(), |acc, (k, v)| match large.coords.get(k) {
            Some(w) => acc + v.clone() * w.clone(),
            None => acc,
        })
    }

    pub fn norm2(&self) -> T {
        self.dot(self)
    }

    /// Coordinatewise comparison up to `tol` (exact scalars ignore it).
    pub fn close_to(&self, other: &Self, tol: f64) -> bool {
        let keys: std::collections::BTreeSet<usize> = self.coords.keys().chain(other.coords.keys()).copied().collect();
        keys.into_iter().all(|k| self.coordinate(k).close_to(&other.coordinate(k), tol))
    }

    /// `(class, rendered value)` pairs for reports.
    pub fn rendered(&self) -> Vec<(usize, String)> {
        self.coords.iter().map(|(&k, v)| (k, v.render())).collect()
    }
}
