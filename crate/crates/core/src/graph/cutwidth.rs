//! Cutwidth by dynamic programming over placed-vertex subsets, and the
//! monotone-set width computed as a closure game.

use serde::Serialize;

use super::ColoredGraph;
use crate::error::{Error, Result};

pub const MAX_CUTWIDTH_VERTICES: usize = 22;

/// A vertex ordering with the cut size after each prefix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CutProfile {
    pub ordering: Vec<usize>,
    pub cut_values: Vec<usize>,
}

impl CutProfile {
    pub fn for_ordering(g: &ColoredGraph, ordering: &[usize]) -> Result<Self> {
        let n = g.vertex_count();
        let mut seen = vec![false; n];
        if ordering.len() != n || ordering.iter().any(|&v| v >= n || std::mem::replace(&mut seen[v], true)) {
            return Err(Error::InvalidParameter("ordering is not a permutation".into()));
        }
        let mut placed = vec![false; n];
        let mut cut = 0isize;
        let mut cut_values = Vec::with_capacity(n);
        for &v in ordering {
            let inside = g.neighbors(v).iter().filter(|&&w| placed[w]).count() as isize;
            cut += g.degree(v) as isize - 2 * inside;
            placed[v] = true;
            cut_values.push(cut as usize);
        }
        Ok(Self {
            ordering: ordering.to_vec(),
            cut_values,
        })
    }

    pub fn width(&self) -> usize {
        self.cut_values.iter().copied().max().unwrap_or(0)
    }
}

fn check_budget(g: &ColoredGraph) -> Result<()> {
    if g.vertex_count() > MAX_CUTWIDTH_VERTICES {
        return Err(Error::BudgetExceeded(format!(
            "subset DP over {} vertices exceeds the {MAX_CUTWIDTH_VERTICES}-vertex budget",
            g.vertex_count()
        )));
    }
    Ok(())
}

/// `cut[S]` for every subset, built from `S \ {lowest vertex}`.
fn all_cuts(g: &ColoredGraph) -> Vec<u16> {
    let n = g.vertex_count();
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect();
    let mut cut = vec![0u16; 1 << n];
    for s in 1usize..(1 << n) {
        let v = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        let inside = (adj[v] & rest as u32).count_ones() as i32;
        cut[s] = (cut[rest] as i32 + g.degree(v) as i32 - 2 * inside) as u16;
    }
    cut
}

/// Exact cutwidth and an optimal ordering.
///
/// `best[S]` is the least achievable maximum prefix cut over orderings that
/// place exactly `S` first. Witness reconstruction walks back from the full
/// set, removing the lowest-index vertex that attains the optimum.
pub fn cutwidth(g: &ColoredGraph) -> Result<(usize, CutProfile)> {
    check_budget(g)?;
    let n = g.vertex_count();
    if n == 0 {
        return Ok((0, CutProfile { ordering: vec![], cut_values: vec![] }));
    }
    let cut = all_cuts(g);
    let full = (1usize << n) - 1;
    let mut best = vec![u16::MAX; 1 << n];
    best[0] = 0;
    for s in 1..=full {
        let mut m = u16::MAX;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros();
            rest &= rest - 1;
            m = m.min(best[s & !(1 << v)]);
        }
        best[s] = m.max(cut[s]);
    }

    let mut ordering = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let v = (0..n)
            .find(|&v| s >> v & 1 == 1 && best[s & !(1 << v)].max(cut[s]) == best[s])
            .expect("DP optimum has a predecessor");
        ordering.push(v);
        s &= !(1 << v);
    }
    ordering.reverse();
    let profile = CutProfile::for_ordering(g, &ordering)?;
    debug_assert_eq!(profile.width(), best[full] as usize);
    Ok((best[full] as usize, profile))
}

/// Width as the value of the monotone-set game:
/// `max_Omega min_{(S, S+i) in boundary} max(cut(S), cut(S+i))`, with `Omega`
/// ranging over down-closed families containing the empty set but not `V`.
///
/// For a threshold `k` the least admissible family is the closure of `{∅}`
/// under taking subsets and under steps `S -> S+i` whose cost is below `k`;
/// the width is at least `k` exactly when that closure avoids `V`.
pub fn graph_width(g: &ColoredGraph) -> Result<usize> {
    check_budget(g)?;
    let n = g.vertex_count();
    if n <= 1 {
        return Ok(0);
    }
    let cut = all_cuts(g);
    let full = (1usize << n) - 1;
    let reaches_full = |k: u16| -> bool {
        let mut member = vec![false; 1 << n];
        let mut stack = vec![0usize];
        member[0] = true;
        while let Some(s) = stack.pop() {
            for v in 0..n {
                let bit = 1usize << v;
                let t = s ^ bit;
                let admit = if s & bit != 0 {
                    true
                } else {
                    cut[s].max(cut[t]) < k
                };
                if admit && !member[t] {
                    member[t] = true;
                    stack.push(t);
                }
            }
        }
        member[full]
    };
    // closure grows with k; the width is the largest k whose closure avoids V
    let (mut lo, mut hi) = (0u16, cut.iter().copied().max().unwrap_or(0) + 1);
    while lo + 1 < hi {
        let mid = (lo + hi) / 2;
        if reaches_full(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(lo as usize)
}
