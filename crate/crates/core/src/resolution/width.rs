use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use super::edgeset::{EdgeSet, MAX_EDGES};
use crate::error::{Error, Result};
use crate::xor::XorSystem;

/// Default cap on explored `(set, sign)` states.
pub const DEFAULT_STATE_BUDGET: usize = 20_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_odd(odd: bool) -> Self {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_odd(self.is_minus() != rhs.is_minus())
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.is_minus() { "-" } else { "+" })
    }
}

/// One projected constraint: the parity of `support` is `odd`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Generator {
    pub vertex: usize,
    pub support: EdgeSet,
    pub odd: bool,
}

/// The constraint system written over base edges.
///
/// With `z_e = x(lo, hi)` for `e = {lo, hi}` and `t = f ^ g`, the edge
/// constraints give `x(hi, lo) = z_e ^ t_e`, and the vertex constraints of
/// `v` collapse to `xor(z_e : e ∋ v) = xor(t_e : e ∋ v, v = hi(e))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectedSystem {
    n: usize,
    edges: Vec<(usize, usize)>,
    twist: EdgeSet,
    generators: Vec<Generator>,
}

impl ProjectedSystem {
    pub fn from_xor(sys: &XorSystem) -> Result<Self> {
        let base = sys.base();
        let twist: Vec<usize> = (0..base.edge_count()).filter(|&e| sys.twist_difference(e)).collect();
        Self::from_edges(base.vertex_count(), base.edges(), EdgeSet::from_indices(&twist))
    }

    /// `edges` in canonical order (`lo < hi`, sorted); `twist` marks `f ^ g`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)], twist: EdgeSet) -> Result<Self> {
        if edges.len() > MAX_EDGES {
            return Err(Error::InvalidParameter(format!(
                "{} edges exceed the {MAX_EDGES}-edge limit",
                edges.len()
            )));
        }
        if twist.iter().any(|e| e >= edges.len()) {
            return Err(Error::InvalidParameter("twist marks an edge out of range".into()));
        }
        let mut support = vec![EdgeSet::EMPTY; n];
        let mut odd = vec![false; n];
        for (e, &(a, b)) in edges.iter().enumerate() {
            if a >= b || b >= n {
                return Err(Error::InvalidGraph(format!("edge ({a}, {b}) not canonical")));
            }
            support[a] = support[a].sym_diff(EdgeSet::singleton(e));
            support[b] = support[b].sym_diff(EdgeSet::singleton(e));
            odd[b] ^= twist.contains(e);
        }
        let generators = (0..n)
            .map(|v| Generator { vertex: v, support: support[v], odd: odd[v] })
            .collect();
        Ok(Self { n, edges: edges.to_vec(), twist, generators })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn twist(&self) -> EdgeSet {
        self.twist
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    /// Whether the projected constraints are jointly satisfiable.
    pub fn is_satisfiable(&self) -> bool {
        !self.generators.iter().fold(false, |acc, g| acc ^ g.odd)
    }

    /// Sign correction for reading the directed variable `x(p, q)` as the
    /// edge bit of `{p, q}`.
    pub fn orientation_sign(&self, p: usize, q: usize) -> Option<Sign> {
        let e = self.edge_index(p, q)?;
        Some(Sign::from_odd(p > q && self.twist.contains(e)))
    }

    pub fn edge_index(&self, p: usize, q: usize) -> Option<usize> {
        self.edges.binary_search(&(p.min(q), p.max(q))).ok()
    }
}

/// Every `T` with `S ⊢ T`, one per generator in vertex order.
pub fn step_relation(s: EdgeSet, sys: &ProjectedSystem) -> Vec<(EdgeSet, Sign)> {
    sys.generators
        .iter()
        .map(|g| (s.sym_diff(g.support), Sign::from_odd(g.odd)))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RefutationWidth {
    /// The least width admitting a refutation.
    Exact(usize),
    /// No refutation of width below this value.
    AtLeast(usize),
}

impl RefutationWidth {
    /// Whether no refutation of width `w` exists.
    pub fn exceeds(self, w: usize) -> bool {
        match self {
            RefutationWidth::Exact(x) => x > w,
            RefutationWidth::AtLeast(x) => x > w,
        }
    }

    pub fn lower_bound(self) -> usize {
        match self {
            RefutationWidth::Exact(x) | RefutationWidth::AtLeast(x) => x,
        }
    }
}

impl fmt::Display for RefutationWidth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RefutationWidth::Exact(w) => write!(f, "{w}"),
            RefutationWidth::AtLeast(w) => write!(f, ">= {w}"),
        }
    }
}

pub fn refutation_width(sys: &ProjectedSystem, max_w: usize) -> Result<RefutationWidth> {
    refutation_width_with_budget(sys, max_w, DEFAULT_STATE_BUDGET)
}

/// Bottleneck search from `(∅, +)` to `(∅, -)`: the cost of a path is the
/// largest set it visits.
pub fn refutation_width_with_budget(sys: &ProjectedSystem, max_w: usize, budget: usize) -> Result<RefutationWidth> {
    let mut best: HashMap<(u128, bool), usize> = HashMap::new();
    let mut buckets: Vec<Vec<(u128, bool)>> = vec![Vec::new(); max_w + 1];
    best.insert((0, false), 0);
    buckets[0].push((0, false));
    for b in 0..=max_w {
        while let Some(state) = buckets[b].pop() {
            if best[&state] < b {
                continue;
            }
            if state == (0, true) {
                return Ok(RefutationWidth::Exact(b));
            }
            for g in &sys.generators {
                let next = (state.0 ^ g.support.bits(), state.1 ^ g.odd);
                let cost = b.max(next.0.count_ones() as usize);
                if cost > max_w {
                    continue;
                }
                if best.get(&next).is_some_and(|&c| c <= cost) {
                    continue;
                }
                best.insert(next, cost);
                if best.len() > budget {
                    return Err(Error::BudgetExceeded(format!("more than {budget} resolution states")));
                }
                buckets[cost].push(next);
            }
        }
    }
    Ok(RefutationWidth::AtLeast(max_w + 1))
}

/// Signs with which `T` is derivable from `S` when every set along the way
/// has at most `w` edges.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Derivable {
    pub plus: bool,
    pub minus: bool,
}

impl Derivable {
    pub fn any(self) -> bool {
        self.plus || self.minus
    }

    pub fn only(self) -> Option<Sign> {
        match (self.plus, self.minus) {
            (true, false) => Some(Sign::Plus),
            (false, true) => Some(Sign::Minus),
            _ => None,
        }
    }
}

/// Every `(set, sign)` reachable from `(s, +)` within width `w`.
pub fn reachable(sys: &ProjectedSystem, s: EdgeSet, w: usize, budget: usize) -> Result<HashMap<EdgeSet, Derivable>> {
    let mut seen: HashMap<EdgeSet, Derivable> = HashMap::new();
    if s.len() > w {
        return Ok(seen);
    }
    let mut queue = VecDeque::from([(s, false)]);
    seen.insert(s, Derivable { plus: true, minus: false });
    let mut count = 1;
    while let Some((cur, odd)) = queue.pop_front() {
        for g in &sys.generators {
            let next = cur.sym_diff(g.support);
            if next.len() > w {
                continue;
            }
            let sign = odd ^ g.odd;
            let entry = seen.entry(next).or_default();
            let slot = if sign { &mut entry.minus } else { &mut entry.plus };
            if !*slot {
                *slot = true;
                count += 1;
                if count > budget {
                    return Err(Error::BudgetExceeded(format!("more than {budget} resolution states")));
                }
                queue.push_back((next, sign));
            }
        }
    }
    Ok(seen)
}

pub fn derivable(sys: &ProjectedSystem, s: EdgeSet, t: EdgeSet, w: usize) -> Result<Derivable> {
    Ok(reachable(sys, s, w, DEFAULT_STATE_BUDGET)?.get(&t).copied().unwrap_or_default())
}
