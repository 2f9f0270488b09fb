//! Sparse Fourier expansions of 0/1 functions on base-edge bits.
//!
//! A point is an [`EdgeSet`] listing the edges whose bit is 1; the character
//! of `S` evaluates to `(-1)^{|S ∩ x|}`.

use std::collections::BTreeMap;

use crate::cfi::CfiPair;
use crate::error::{Error, Result};
use crate::resolution::{EdgeSet, MAX_EDGES};
use crate::scalar::Scalar;
use crate::xor::{alpha_of, PartialIso, XorVar};
use crate::Rational;

#[derive(Clone, Debug, PartialEq)]
pub struct SparseBoolFn<T: Scalar = Rational> {
    ambient: usize,
    coeffs: BTreeMap<EdgeSet, T>,
}

fn check_ambient(ambient: usize) -> Result<()> {
    if ambient > MAX_EDGES {
        return Err(Error::InvalidParameter(format!("{ambient} bits exceed the {MAX_EDGES}-bit limit")));
    }
    Ok(())
}

/// Every subset of `mask`, starting with the empty set.
fn submasks(mask: u128) -> impl Iterator<Item = u128> {
    let mut next = Some(0u128);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == mask { None } else { Some(((cur | !mask).wrapping_add(1)) & mask) };
        Some(cur)
    })
}

impl<T: Scalar> SparseBoolFn<T> {
    pub fn zero(ambient: usize) -> Self {
        Self { ambient, coeffs: BTreeMap::new() }
    }

    pub fn constant(ambient: usize, c: T) -> Self {
        let mut f = Self::zero(ambient);
        if !c.is_zero() {
            f.coeffs.insert(EdgeSet::EMPTY, c);
        }
        f
    }

    pub fn one(ambient: usize) -> Self {
        Self::constant(ambient, T::one())
    }

    pub fn from_coefficients(ambient: usize, coeffs: impl IntoIterator<Item = (EdgeSet, T)>) -> Result<Self> {
        check_ambient(ambient)?;
        let mut f = Self::zero(ambient);
        for (s, c) in coeffs {
            if s.iter().any(|e| e >= ambient) {
                return Err(Error::InvalidParameter(format!("{s:?} leaves the {ambient}-bit ambient set")));
            }
            f.accumulate(s, c);
        }
        Ok(f)
    }

    /// Coefficients by direct expectation over the cube on `bits`; `table`
    /// is only queried at points inside `bits`.
    pub fn from_truth_table(ambient: usize, bits: EdgeSet, table: impl Fn(EdgeSet) -> T) -> Result<Self> {
        check_ambient(ambient)?;
        if bits.iter().any(|e| e >= ambient) {
            return Err(Error::InvalidParameter("relevant bits leave the ambient set".into()));
        }
        let points: Vec<(EdgeSet, T)> = submasks(bits.bits()).map(|x| (EdgeSet::from_bits(x), table(EdgeSet::from_bits(x)))).collect();
        let scale = T::from_dyadic(1, bits.len() as u32);
        let mut f = Self::zero(ambient);
        for j in submasks(bits.bits()) {
            let mut acc = T::zero();
            for (x, v) in &points {
                if (j & x.bits()).count_ones() % 2 == 0 {
                    acc = acc + v.clone();
                } else {
                    acc = acc - v.clone();
                }
            }
            f.accumulate(EdgeSet::from_bits(j), acc * scale.clone());
        }
        Ok(f)
    }

    fn accumulate(&mut self, s: EdgeSet, c: T) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(s).or_insert_with(T::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.coeffs.remove(&s);
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn coefficient(&self, s: EdgeSet) -> T {
        self.coeffs.get(&s).cloned().unwrap_or_else(T::zero)
    }

    /// Nonzero coefficients in ascending set order.
    pub fn coefficients(&self) -> impl Iterator<Item = (EdgeSet, &T)> {
        self.coeffs.iter().map(|(&s, c)| (s, c))
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest `|S|` with a nonzero coefficient.
    pub fn degree(&self) -> usize {
        self.coeffs.keys().map(|s| s.len()).max().unwrap_or(0)
    }

    /// Bits the function depends on.
    pub fn relevant_bits(&self) -> EdgeSet {
        self.coeffs.keys().fold(EdgeSet::EMPTY, |acc, &s| acc.union(s))
    }

    pub fn evaluate(&self, x: EdgeSet) -> T {
        self.coeffs.iter().fold(T::zero(), |acc, (s, c)| {
            if (s.bits() & x.bits()).count_ones().is_multiple_of(2) {
                acc + c.clone()
            } else {
                acc - c.clone()
            }
        })
    }

    /// `Σ ĥ(S)²`, which equals `E[h²]`.
    pub fn sum_of_squares(&self) -> T {
        self.coeffs.values().fold(T::zero(), |acc, c| acc + c.clone() * c.clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut f = Self::zero(self.ambient);
        for (&s, v) in &self.coeffs {
            f.accumulate(s, v.clone() * c.clone());
        }
        f
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_ambient(other)?;
        let mut f = self.clone();
        for (&s, c) in &other.coeffs {
            f.accumulate(s, c.clone());
        }
        Ok(f)
    }

    /// Pointwise product: the convolution `Σ_J f̂(J) ĝ(I Δ J)`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.same_ambient(other)?;
        let mut f = Self::zero(self.ambient);
        for (&a, x) in &self.coeffs {
            for (&b, y) in &other.coeffs {
                f.accumulate(a.sym_diff(b), x.clone() * y.clone());
            }
        }
        Ok(f)
    }

    fn same_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }
}

/// Fourier expansion of the indicator that every listed bit takes its value.
/// Contradictory demands give the zero function.
pub fn indicator_fourier<T: Scalar>(ambient: usize, assignment: &[(usize, bool)]) -> Result<SparseBoolFn<T>> {
    check_ambient(ambient)?;
    let mut domain = 0u128;
    let mut values = 0u128;
    for &(e, b) in assignment {
        if e >= ambient {
            return Err(Error::InvalidParameter(format!("bit {e} outside the {ambient}-bit ambient set")));
        }
        if domain >> e & 1 == 1 {
            if (values >> e & 1 == 1) != b {
                return Ok(SparseBoolFn::zero(ambient));
            }
            continue;
        }
        domain |= 1 << e;
        values |= (b as u128) << e;
    }
    let k = domain.count_ones();
    let pos = T::from_dyadic(1, k);
    let neg = T::from_dyadic(-1, k);
    let mut f = SparseBoolFn::zero(ambient);
    for j in submasks(domain) {
        let c = if (j & values).count_ones().is_multiple_of(2) { pos.clone() } else { neg.clone() };
        f.coeffs.insert(EdgeSet::from_bits(j), c);
    }
    Ok(f)
}

/// How directed variables are read as edge bits.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Collapse {
    /// `x(p, q) = w_e ^ t_e` when `p` is the higher endpoint and `t = f ^ g`;
    /// otherwise `x(p, q) = w_e`. Same for `y`.
    #[default]
    Oriented,
    /// All four directed variables of an edge equal `w_e`.
    Literal,
}

/// The edge-bit demands made by `α_σ`, or `None` when `σ` is not
/// harmonious or two demands on one edge disagree.
pub fn edge_demands(pair: &CfiPair, sigma: &PartialIso, collapse: Collapse) -> Option<Vec<(usize, bool)>> {
    let alpha = alpha_of(pair, sigma).ok()?;
    let base = pair.base();
    let mut demands: BTreeMap<usize, bool> = BTreeMap::new();
    for (var, value) in alpha.iter() {
        let (p, q) = match var {
            XorVar::X(p, q) | XorVar::Y(p, q) => (p, q),
        };
        let e = base.edge_index(p, q).expect("variables name base edges");
        let twisted = pair.f().get(e) ^ pair.g().get(e);
        let w = match collapse {
            Collapse::Oriented => value ^ (p > q && twisted),
            Collapse::Literal => value,
        };
        if *demands.entry(e).or_insert(w) != w {
            return None;
        }
    }
    Some(demands.into_iter().collect())
}

/// `h_σ` over the base edges; zero when `σ` is not harmonious.
pub fn h_of_sigma<T: Scalar>(pair: &CfiPair, sigma: &PartialIso) -> Result<SparseBoolFn<T>> {
    h_of_sigma_with(pair, sigma, Collapse::Oriented)
}

pub fn h_of_sigma_with<T: Scalar>(pair: &CfiPair, sigma: &PartialIso, collapse: Collapse) -> Result<SparseBoolFn<T>> {
    let m = pair.base().edge_count();
    match edge_demands(pair, sigma, collapse) {
        Some(d) => indicator_fourier(m, &d),
        None => {
            check_ambient(m)?;
            Ok(SparseBoolFn::zero(m))
        }
    }
}
