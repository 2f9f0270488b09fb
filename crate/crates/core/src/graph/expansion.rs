//! Edge expansion `min_S |E(S, S^c)| / min(|S|, |S^c|)`.
//!
//! The exact routine enumerates subsets in Gray-code order so each step
//! updates the cut in O(1) word operations. The bounds routine pairs a
//! spectral lower bound with sampled upper bounds for larger graphs.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::ColoredGraph;
use crate::error::{Error, Result};
use crate::Rational;

pub const MAX_EXACT_EXPANSION_VERTICES: usize = 26;

/// Slack subtracted from `lambda_2 / 2` so the reported float is a certified
/// lower bound despite eigen-solver rounding.
pub const SPECTRAL_SLACK: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExpansionWitness {
    pub value: Rational,
    /// The side achieving `value` (the smaller side, or either when equal).
    pub set: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpansionBounds {
    pub lower: f64,
    pub lambda2: f64,
    pub upper: Rational,
    pub upper_set: Vec<usize>,
}

/// Expansion of one vertex set; `None` when the set is empty or everything.
pub fn set_expansion(g: &ColoredGraph, set: &[usize]) -> Option<Rational> {
    let n = g.vertex_count();
    let mut mask = vec![false; n];
    for &v in set {
        mask[v] = true;
    }
    let size = mask.iter().filter(|&&b| b).count();
    if size == 0 || size == n {
        return None;
    }
    let denom = size.min(n - size);
    Some(Rational::new(g.cut_size(&mask) as i128, denom as i128))
}

pub fn expansion_exact(g: &ColoredGraph) -> Result<ExpansionWitness> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::InvalidParameter("expansion needs at least 2 vertices".into()));
    }
    if n > MAX_EXACT_EXPANSION_VERTICES {
        return Err(Error::BudgetExceeded(format!(
            "exact expansion enumerates 2^(n-1) subsets; n = {n} > {MAX_EXACT_EXPANSION_VERTICES}"
        )));
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect();
    let deg: Vec<i64> = (0..n).map(|v| g.degree(v) as i64).collect();

    // Vertex n-1 stays outside S; every cut is seen from one side.
    let free = n - 1;
    let mut set: u32 = 0;
    let mut cut: i64 = 0;
    let mut size: usize = 0;
    let mut best_cut: i64 = i64::MAX;
    let mut best_den: i64 = 1;
    let mut best_set: u32 = 0;
    for step in 1u64..(1u64 << free) {
        let v = step.trailing_zeros() as usize;
        let bit = 1u32 << v;
        if set & bit == 0 {
            cut += deg[v] - 2 * (adj[v] & set).count_ones() as i64;
            set |= bit;
            size += 1;
        } else {
            set &= !bit;
            cut -= deg[v] - 2 * (adj[v] & set).count_ones() as i64;
            size -= 1;
        }
        let den = size.min(n - size) as i64;
        if best_cut == i64::MAX || cut * best_den < best_cut * den {
            best_cut = cut;
            best_den = den;
            best_set = set;
        }
    }
    let mut members: Vec<usize> = (0..n).filter(|&v| best_set >> v & 1 == 1).collect();
    if members.len() * 2 > n {
        members = (0..n).filter(|&v| best_set >> v & 1 == 0).collect();
    }
    Ok(ExpansionWitness {
        value: Rational::new(best_cut as i128, best_den as i128),
        set: members,
    })
}

/// Second-smallest Laplacian eigenvalue.
pub fn laplacian_lambda2(g: &ColoredGraph) -> f64 {
    let n = g.vertex_count();
    if n < 2 {
        return 0.0;
    }
    let mut lap = DMatrix::<f64>::zeros(n, n);
    for v in 0..n {
        lap[(v, v)] = g.degree(v) as f64;
    }
    for &(a, b) in g.edges() {
        lap[(a, b)] = -1.0;
        lap[(b, a)] = -1.0;
    }
    let mut eig: Vec<f64> = SymmetricEigen::new(lap).eigenvalues.iter().copied().collect();
    eig.sort_by(|a, b| a.partial_cmp(b).unwrap());
    eig[1].max(0.0)
}

/// Spectral lower bound and sampled upper bound on the expansion.
///
/// The lower bound follows from `|E(S, S^c)| >= lambda_2 |S||S^c| / n` and
/// `max(|S|, |S^c|) >= n / 2`. Candidates for the upper bound: every
/// singleton, every BFS ball, and `samples` random subsets.
pub fn expansion_bounds(g: &ColoredGraph, samples: usize, seed: u64) -> Result<ExpansionBounds> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::InvalidParameter("expansion needs at least 2 vertices".into()));
    }
    let lambda2 = laplacian_lambda2(g);
    let lower = (lambda2 / 2.0 - SPECTRAL_SLACK).max(0.0);

    let mut best: Option<(Rational, Vec<usize>)> = None;
    let mut consider = |set: Vec<usize>| {
        if let Some(x) = set_expansion(g, &set) {
            if best.as_ref().is_none_or(|(b, _)| x < *b) {
                best = Some((x, set));
            }
        }
    };
    for v in 0..n {
        let dist = g.bfs_distances(v);
        let radius = dist.iter().flatten().copied().max().unwrap_or(0);
        for r in 0..=radius {
            let ball: Vec<usize> = (0..n).filter(|&w| matches!(dist[w], Some(d) if d <= r)).collect();
            consider(ball);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let size = rng.gen_range(1..=n / 2);
        let set = rand::seq::index::sample(&mut rng, n, size).into_vec();
        consider(set);
    }
    let (upper, mut upper_set) = best.expect("n >= 2 yields a singleton candidate");
    upper_set.sort_unstable();
    Ok(ExpansionBounds {
        lower,
        lambda2,
        upper,
        upper_set,
    })
}
