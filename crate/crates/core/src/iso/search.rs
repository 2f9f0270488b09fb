use std::time::{Duration, Instant};

use serde::Serialize;

use super::wl::refine_pair;
use crate::cfi::verify_isomorphism;
use crate::error::{Error, Result};
use crate::graph::ColoredGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub max_time: Option<Duration>,
}

impl SearchBudget {
    pub fn nodes(max_nodes: u64) -> Self {
        Self { max_nodes, max_time: None }
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self { max_nodes: 1_000_000, max_time: Some(Duration::from_secs(60)) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum IsoOutcome {
    /// A verified color-preserving isomorphism `g -> h`.
    Found(Vec<usize>),
    /// The whole search tree was explored without a leaf.
    NoneComplete,
    /// The budget ran out first.
    Timeout,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoCertificate {
    pub outcome: IsoOutcome,
    /// Search-tree nodes visited.
    pub nodes: u64,
}

impl IsoCertificate {
    pub fn map(&self) -> Option<&[usize]> {
        match &self.outcome {
            IsoOutcome::Found(m) => Some(m),
            _ => None,
        }
    }
}

struct Search<'a> {
    g: &'a ColoredGraph,
    h: &'a ColoredGraph,
    budget: SearchBudget,
    start: Instant,
    nodes: u64,
    /// Stop after this many leaves; `None` for all.
    want: Option<usize>,
    found: Vec<Vec<usize>>,
    timed_out: bool,
}

impl Search<'_> {
    fn out_of_budget(&mut self) -> bool {
        if self.nodes >= self.budget.max_nodes || self.budget.max_time.is_some_and(|t| self.start.elapsed() > t) {
            self.timed_out = true;
        }
        self.timed_out
    }

    fn done(&self) -> bool {
        self.timed_out || self.want.is_some_and(|w| self.found.len() >= w)
    }

    fn run(&mut self, cg: Vec<u32>, ch: Vec<u32>) {
        if self.done() || self.out_of_budget() {
            return;
        }
        self.nodes += 1;
        let (cg, ch, _, diff) = refine_pair(self.g, self.h, cg, ch);
        if diff.is_some() {
            return;
        }
        let n = self.g.vertex_count();
        let mut sizes = vec![0usize; n.max(1)];
        for &c in &cg {
            sizes[c as usize] += 1;
        }
        // smallest non-singleton class, lowest color id among ties
        let Some(target) = (0..n).filter(|&c| sizes[c] > 1).min_by_key(|&c| (sizes[c], c)) else {
            let mut map = vec![0; n];
            let mut by_color = vec![usize::MAX; n];
            for (w, &c) in ch.iter().enumerate() {
                by_color[c as usize] = w;
            }
            for (v, &c) in cg.iter().enumerate() {
                map[v] = by_color[c as usize];
            }
            if verify_isomorphism(self.g, self.h, &map).is_ok() {
                self.found.push(map);
            }
            return;
        };
        let v = (0..n).find(|&x| cg[x] as usize == target).expect("class is nonempty");
        let fresh = n as u32;
        for w in (0..n).filter(|&x| ch[x] as usize == target) {
            let mut ng = cg.clone();
            let mut nh = ch.clone();
            ng[v] = fresh;
            nh[w] = fresh;
            self.run(ng, nh);
            if self.done() {
                return;
            }
        }
    }
}

fn initial(x: &ColoredGraph) -> Vec<u32> {
    (0..x.vertex_count()).map(|v| x.color(v)).collect()
}

/// Individualization-refinement search for a color-preserving isomorphism.
pub fn find_isomorphism(g: &ColoredGraph, h: &ColoredGraph, budget: SearchBudget) -> IsoCertificate {
    if g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() {
        return IsoCertificate { outcome: IsoOutcome::NoneComplete, nodes: 0 };
    }
    let mut s = Search { g, h, budget, start: Instant::now(), nodes: 0, want: Some(1), found: Vec::new(), timed_out: false };
    s.run(initial(g), initial(h));
    let outcome = match s.found.pop() {
        Some(m) => IsoOutcome::Found(m),
        None if s.timed_out => IsoOutcome::Timeout,
        None => IsoOutcome::NoneComplete,
    };
    IsoCertificate { outcome, nodes: s.nodes }
}

/// Every color-preserving automorphism, sorted; fails once more than
/// `limit` exist or the budget runs out.
pub fn automorphisms(g: &ColoredGraph, limit: usize, budget: SearchBudget) -> Result<Vec<Vec<usize>>> {
    let mut s = Search { g, h: g, budget, start: Instant::now(), nodes: 0, want: Some(limit + 1), found: Vec::new(), timed_out: false };
    s.run(initial(g), initial(g));
    if s.timed_out {
        return Err(Error::BudgetExceeded(format!("automorphism search stopped after {} nodes", s.nodes)));
    }
    if s.found.len() > limit {
        return Err(Error::BudgetExceeded(format!("more than {limit} automorphisms")));
    }
    s.found.sort();
    Ok(s.found)
}
