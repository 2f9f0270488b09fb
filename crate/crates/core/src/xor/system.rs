use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use super::gf2::Gf2System;
use super::perm::PartialIso;
use crate::cfi::{CfiPair, CfiVertexId, TwistFunction};
use crate::error::{Error, Result};
use crate::graph::ColoredGraph;

/// A variable of the system; the oriented edge `(v, u)` names the exterior
/// pair `(v, u)_*` in the gadget of `v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum XorVar {
    X(usize, usize),
    Y(usize, usize),
}

impl fmt::Display for XorVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            XorVar::X(v, u) => write!(f, "x({v},{u})"),
            XorVar::Y(v, u) => write!(f, "y({v},{u})"),
        }
    }
}

/// `xor(vars) = rhs`, variables given by index into [`XorSystem::vars`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct XorConstraint {
    pub vars: Vec<usize>,
    pub rhs: bool,
}

/// The system relating partial maps `X_f(G) -> X_g(G)` to assignments:
/// per vertex `x(v,u_i) + y(v,u_i) = 0` for each neighbor and
/// `y(v,u_1) + y(v,u_2) + y(v,u_3) = 0`; per edge `x(u,v) + x(v,u) = f + g`.
#[derive(Clone, Debug)]
pub struct XorSystem {
    base: ColoredGraph,
    f: TwistFunction,
    g: TwistFunction,
    starts: Vec<usize>,
    vars: Vec<XorVar>,
    constraints: Vec<XorConstraint>,
}

impl XorSystem {
    pub fn build(base: &ColoredGraph, f: &TwistFunction, g: &TwistFunction) -> Result<Self> {
        if !base.is_regular(3) {
            return Err(Error::NotCubic("the constraint system needs a 3-regular base".into()));
        }
        if f.len() != base.edge_count() || g.len() != base.edge_count() {
            return Err(Error::InvalidParameter("twist length differs from edge count".into()));
        }
        let n = base.vertex_count();
        let mut starts = Vec::with_capacity(n + 1);
        let mut vars = Vec::new();
        for v in 0..n {
            starts.push(vars.len() / 2);
            for &u in base.neighbors(v) {
                vars.push(XorVar::X(v, u));
                vars.push(XorVar::Y(v, u));
            }
        }
        starts.push(vars.len() / 2);
        let mut me = Self {
            base: base.clone(),
            f: f.clone(),
            g: g.clone(),
            starts,
            vars,
            constraints: Vec::new(),
        };
        let mut constraints = Vec::with_capacity(4 * n + base.edge_count());
        for v in 0..n {
            let ys: Vec<usize> = base.neighbors(v).iter().map(|&u| me.index(XorVar::Y(v, u)).unwrap()).collect();
            for (&u, &y) in base.neighbors(v).iter().zip(&ys) {
                let x = me.index(XorVar::X(v, u)).unwrap();
                constraints.push(XorConstraint { vars: vec![x, y], rhs: false });
            }
            constraints.push(XorConstraint { vars: ys, rhs: false });
        }
        for (e, &(a, b)) in base.edges().iter().enumerate() {
            let mut pair = vec![me.index(XorVar::X(a, b)).unwrap(), me.index(XorVar::X(b, a)).unwrap()];
            pair.sort_unstable();
            constraints.push(XorConstraint { vars: pair, rhs: f.get(e) ^ g.get(e) });
        }
        me.constraints = constraints;
        Ok(me)
    }

    pub fn base(&self) -> &ColoredGraph {
        &self.base
    }

    pub fn f(&self) -> &TwistFunction {
        &self.f
    }

    pub fn g(&self) -> &TwistFunction {
        &self.g
    }

    /// `f ^ g` on edge `e`.
    pub fn twist_difference(&self, e: usize) -> bool {
        self.f.get(e) ^ self.g.get(e)
    }

    pub fn vars(&self) -> &[XorVar] {
        &self.vars
    }

    pub fn constraints(&self) -> &[XorConstraint] {
        &self.constraints
    }

    pub fn index(&self, var: XorVar) -> Option<usize> {
        let (v, u, kind) = match var {
            XorVar::X(v, u) => (v, u, 0),
            XorVar::Y(v, u) => (v, u, 1),
        };
        if v >= self.base.vertex_count() {
            return None;
        }
        let i = self.base.neighbors(v).binary_search(&u).ok()?;
        Some(2 * (self.starts[v] + i) + kind)
    }

    /// XOR of every constraint: empty support with rhs `parity(f) ^ parity(g)`.
    pub fn sum_all(&self) -> XorConstraint {
        let mut count = vec![false; self.vars.len()];
        let mut rhs = false;
        for c in &self.constraints {
            for &v in &c.vars {
                count[v] ^= true;
            }
            rhs ^= c.rhs;
        }
        XorConstraint {
            vars: (0..self.vars.len()).filter(|&v| count[v]).collect(),
            rhs,
        }
    }

    /// Number of constraints containing each variable.
    pub fn occurrences(&self) -> Vec<usize> {
        let mut occ = vec![0; self.vars.len()];
        for c in &self.constraints {
            for &v in &c.vars {
                occ[v] += 1;
            }
        }
        occ
    }

    pub fn eliminate(&self) -> Gf2System {
        let mut s = Gf2System::new(self.vars.len());
        for c in &self.constraints {
            s.add(&c.vars, c.rhs);
        }
        s
    }

    pub fn is_satisfiable(&self) -> bool {
        self.eliminate().is_consistent()
    }

    /// Text form: a legend of `c` lines, a `p xor` header, then one
    /// `x v1 .. vk rhs` line per constraint with 1-based variables.
    pub fn to_xor_cnf(&self) -> String {
        let mut out = String::new();
        for (i, v) in self.vars.iter().enumerate() {
            let _ = writeln!(out, "c {} {}", i + 1, v);
        }
        let _ = writeln!(out, "p xor {} {}", self.vars.len(), self.constraints.len());
        for c in &self.constraints {
            out.push('x');
            for &v in &c.vars {
                let _ = write!(out, " {}", v + 1);
            }
            let _ = writeln!(out, " {}", c.rhs as u8);
        }
        out
    }
}

pub fn build_phi(base: &ColoredGraph, f: &TwistFunction, g: &TwistFunction) -> Result<XorSystem> {
    XorSystem::build(base, f, g)
}

/// A partial 0/1 assignment to system variables.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialAssignment {
    values: BTreeMap<XorVar, bool>,
}

impl PartialAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, var: XorVar) -> Option<bool> {
        self.values.get(&var).copied()
    }

    /// Sets a value; returns false if it contradicts an earlier one.
    pub fn set(&mut self, var: XorVar, value: bool) -> bool {
        *self.values.entry(var).or_insert(value) == value
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (XorVar, bool)> + '_ {
        self.values.iter().map(|(&k, &v)| (k, v))
    }

    /// Whether every assignment of `other` is also made here, with the same value.
    pub fn extends(&self, other: &Self) -> bool {
        other.iter().all(|(k, v)| self.get(k) == Some(v))
    }
}

/// Same flat id range and same color on both sides for every mapped vertex.
pub fn is_color_preserving(pair: &CfiPair, sigma: &PartialIso) -> bool {
    let n = pair.vertex_count();
    sigma
        .pairs()
        .all(|(i, t)| i < n && t < pair.xg.vertex_count() && pair.xf.graph().color(i) == pair.xg.graph().color(t))
}

/// Flip bits `b ^ b'` of every middle-vertex mapping, grouped by gadget.
fn middle_flips(pair: &CfiPair, sigma: &PartialIso) -> BTreeMap<usize, Vec<u32>> {
    let mut out: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
    for (i, t) in sigma.pairs() {
        if let (CfiVertexId::Middle { v, bits }, CfiVertexId::Middle { bits: img, .. }) = (pair.xf.id(i), pair.xg.id(t)) {
            out.entry(v).or_default().push(bits ^ img);
        }
    }
    out
}

/// Color-preserving and no two middle mappings in one gadget disagree on a
/// flip bit.
pub fn is_harmonious(pair: &CfiPair, sigma: &PartialIso) -> bool {
    is_color_preserving(pair, sigma) && middle_flips(pair, sigma).values().all(|f| f.iter().all(|&x| x == f[0]))
}

/// The encoding of a harmonious map: `(v,u)_b -> (v,u)_b'` sets
/// `x(v,u) = b ^ b'`; `v_b -> v_b'` sets `y(v,u_k) = b_k ^ b'_k`.
pub fn alpha_of(pair: &CfiPair, sigma: &PartialIso) -> Result<PartialAssignment> {
    if !is_harmonious(pair, sigma) {
        return Err(Error::NotHarmonious);
    }
    let base = pair.base();
    let mut alpha = PartialAssignment::new();
    for (i, t) in sigma.pairs() {
        match (pair.xf.id(i), pair.xg.id(t)) {
            (CfiVertexId::Edge { v, u, bit }, CfiVertexId::Edge { bit: img, .. }) => {
                alpha.set(XorVar::X(v, u), bit != img);
            }
            (CfiVertexId::Middle { v, bits }, CfiVertexId::Middle { bits: img, .. }) => {
                for (k, &u) in base.neighbors(v).iter().enumerate() {
                    alpha.set(XorVar::Y(v, u), (bits ^ img) >> k & 1 == 1);
                }
            }
            _ => unreachable!("color-preserving maps keep vertex kinds"),
        }
    }
    Ok(alpha)
}

/// Some constraint has all variables assigned and the wrong parity.
pub fn violates(alpha: &PartialAssignment, sys: &XorSystem) -> bool {
    sys.constraints().iter().any(|c| {
        let mut acc = false;
        for &v in &c.vars {
            match alpha.get(sys.vars()[v]) {
                Some(b) => acc ^= b,
                None => return false,
            }
        }
        acc != c.rhs
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    fn k4_pair(f: &TwistFunction, g: &TwistFunction) -> (CfiPair, XorSystem) {
        let k4 = named::complete(4);
        (CfiPair::build(&k4, f, g).unwrap(), build_phi(&k4, f, g).unwrap())
    }

    #[test]
    fn k4_shape() {
        let z = TwistFunction::zero(6);
        let (_, sys) = k4_pair(&z, &z);
        assert_eq!(sys.vars().len(), 24);
        assert_eq!(sys.constraints().len(), 22);
        assert!(sys.constraints().iter().all(|c| !c.rhs));
        assert!(sys.occurrences().iter().all(|&o| o == 2));
        assert!(sys.is_satisfiable());
        let sum = sys.sum_all();
        assert!(sum.vars.is_empty() && !sum.rhs);
    }

    #[test]
    fn odd_twist_sums_to_contradiction() {
        let (_, sys) = k4_pair(&TwistFunction::zero(6), &TwistFunction::odd(6));
        let sum = sys.sum_all();
        assert!(sum.vars.is_empty() && sum.rhs);
        assert!(!sys.is_satisfiable());
    }

    #[test]
    fn harmonious_examples() {
        let z = TwistFunction::zero(6);
        let (pair, _) = k4_pair(&z, &z);
        let m = |bits| pair.xf.middle(0, bits).unwrap();
        assert!(is_harmonious(&pair, &PartialIso::empty()));
        // bits written as (b_{u1}, b_{u2}, b_{u3}) with u1 in bit 0
        let ok = PartialIso::from_pairs(&[(m(0b000), m(0b000)), (m(0b110), m(0b110))]).unwrap();
        assert!(is_harmonious(&pair, &ok));
        let bad = PartialIso::from_pairs(&[(m(0b000), m(0b000)), (m(0b110), m(0b101))]).unwrap();
        assert!(!is_harmonious(&pair, &bad));
        let off_color = PartialIso::single(m(0), pair.xg.middle(1, 0).unwrap());
        assert!(!is_harmonious(&pair, &off_color));
        assert_eq!(alpha_of(&pair, &bad), Err(Error::NotHarmonious));
    }

    #[test]
    fn alpha_examples() {
        let z = TwistFunction::zero(6);
        let (pair, sys) = k4_pair(&z, &z);
        assert!(alpha_of(&pair, &PartialIso::empty()).unwrap().is_empty());

        let e0 = pair.xf.edge_vertex(0, 1, 0);
        let e1 = pair.xg.edge_vertex(0, 1, 1);
        let a = alpha_of(&pair, &PartialIso::single(e0, e1)).unwrap();
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![(XorVar::X(0, 1), true)]);

        // v_000 -> v_110 in (b_{u1}, b_{u2}, b_{u3}) order
        let src = pair.xf.middle(0, 0).unwrap();
        let dst = pair.xg.middle(0, 0b011).unwrap();
        let a = alpha_of(&pair, &PartialIso::single(src, dst)).unwrap();
        assert_eq!(a.get(XorVar::Y(0, 1)), Some(true));
        assert_eq!(a.get(XorVar::Y(0, 2)), Some(true));
        assert_eq!(a.get(XorVar::Y(0, 3)), Some(false));
        assert!(!violates(&a, &sys));
    }

    #[test]
    fn violation_examples() {
        let z = TwistFunction::zero(6);
        let (_, even) = k4_pair(&z, &z);
        assert!(!violates(&PartialAssignment::new(), &even));
        let mut zero = PartialAssignment::new();
        for &v in even.vars() {
            zero.set(v, false);
        }
        assert!(!violates(&zero, &even));

        let (_, odd) = k4_pair(&z, &TwistFunction::odd(6));
        let mut a = PartialAssignment::new();
        a.set(XorVar::X(0, 1), false);
        a.set(XorVar::X(1, 0), false);
        assert!(violates(&a, &odd));
    }

    #[test]
    fn xor_cnf_text() {
        let z = TwistFunction::zero(6);
        let (_, sys) = k4_pair(&z, &TwistFunction::odd(6));
        let text = sys.to_xor_cnf();
        assert!(text.contains("p xor 24 22"));
        assert_eq!(text.lines().filter(|l| l.starts_with('x')).count(), 22);
        assert!(text.lines().filter(|l| l.starts_with('x')).any(|l| l.ends_with(" 1")));
    }
}
