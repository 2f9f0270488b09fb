//! Simple undirected graphs with optional vertex colors, plus the
//! combinatorial quantities computed on them: expansion, cutwidth and the
//! monotone-set width, clustering, and stretching witnesses.

mod cluster;
mod cutwidth;
pub mod enumerate;
mod expansion;
mod generate;
pub mod io;
pub mod named;
mod stretch;

pub use cluster::{cluster, cluster_labels};
pub use cutwidth::{cutwidth, graph_width, CutProfile, MAX_CUTWIDTH_VERTICES};
pub use expansion::{
    expansion_bounds, expansion_exact, set_expansion, ExpansionBounds, ExpansionWitness,
    MAX_EXACT_EXPANSION_VERTICES,
};
pub use generate::random_3regular;
pub use stretch::{subdivide, verify_stretching, StretchWitness};

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An undirected simple graph on vertices `0..n` with optional colors.
///
/// Edges are stored once as `(u, v)` with `u < v`, sorted; the position of an
/// edge in that list is its canonical index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoredGraph {
    n: usize,
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    colors: Option<Vec<u32>>,
}

impl ColoredGraph {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            adj: vec![Vec::new(); n],
            edges: Vec::new(),
            colors: None,
        }
    }

    /// Builds a graph, rejecting self-loops, duplicates and out-of-range ends.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        let mut list = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!("edge ({a}, {b}) out of range for n = {n}")));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at {a}")));
            }
            list.push((a.min(b), a.max(b)));
            adj[a].push(b);
            adj[b].push(a);
        }
        list.sort_unstable();
        if list.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph("duplicate edge".into()));
        }
        for nb in &mut adj {
            nb.sort_unstable();
        }
        Ok(Self {
            n,
            adj,
            edges: list,
            colors: None,
        })
    }

    pub fn with_colors(mut self, colors: Vec<u32>) -> Result<Self> {
        if colors.len() != self.n {
            return Err(Error::InvalidGraph(format!(
                "{} colors for {} vertices",
                colors.len(),
                self.n
            )));
        }
        self.colors = Some(colors);
        Ok(self)
    }

    pub fn without_colors(&self) -> Self {
        Self {
            colors: None,
            ..self.clone()
        }
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

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn colors(&self) -> Option<&[u32]> {
        self.colors.as_deref()
    }

    /// Color of `v`; uncolored graphs report color 0 everywhere.
    pub fn color(&self, v: usize) -> u32 {
        self.colors.as_ref().map_or(0, |c| c[v])
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.adj[u].binary_search(&v).is_ok()
    }

    /// Canonical index of the edge `{u, v}`.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn is_regular(&self, d: usize) -> bool {
        self.adj.iter().all(|nb| nb.len() == d)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.bfs_distances(0).iter().all(|d| d.is_some())
    }

    pub fn bfs_distances(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut queue = VecDeque::new();
        dist[src] = Some(0);
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Number of vertices within distance `radius` of `v`, including `v`.
    pub fn ball_size(&self, v: usize, radius: usize) -> usize {
        self.bfs_distances(v)
            .iter()
            .filter(|d| matches!(d, Some(x) if *x <= radius))
            .count()
    }

    /// Length of a shortest cycle, if any.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for s in 0..self.n {
            let mut dist = vec![usize::MAX; self.n];
            let mut parent = vec![usize::MAX; self.n];
            let mut queue = VecDeque::new();
            dist[s] = 0;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Number of edges with exactly one endpoint in `set` (given as a mask).
    pub fn cut_size(&self, in_set: &[bool]) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| in_set[a] != in_set[b])
            .count()
    }

    pub fn adjacency_matrix(&self) -> AdjacencyMatrix {
        let mut m = AdjacencyMatrix::zeros(self.n);
        for &(a, b) in &self.edges {
            m.set(a, b);
        }
        m
    }
}

/// Dense symmetric 0/1 matrix with zero diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    n: usize,
    bits: Vec<u8>,
}

impl AdjacencyMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            bits: vec![0; n * n],
        }
    }

    /// Builds from rows, checking symmetry, 0/1 entries, and zero diagonal.
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGraph("adjacency matrix is not square".into()));
            }
            for (j, &x) in row.iter().enumerate() {
                if x > 1 || (i == j && x != 0) || rows[j][i] != x {
                    return Err(Error::InvalidGraph(format!("bad adjacency entry ({i}, {j})")));
                }
                m.bits[i * n + j] = x;
            }
        }
        Ok(m)
    }

    fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.n + j] = 1;
        self.bits[j * self.n + i] = 1;
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.bits[i * self.n + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_and_duplicates() {
        assert!(ColoredGraph::from_edges(3, &[(1, 1)]).is_err());
        assert!(ColoredGraph::from_edges(3, &[(0, 1), (1, 0)]).is_err());
        assert!(ColoredGraph::from_edges(2, &[(0, 2)]).is_err());
    }

    #[test]
    fn edge_indices_are_sorted_positions() {
        let g = ColoredGraph::from_edges(4, &[(3, 2), (0, 1), (1, 3)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 3), (2, 3)]);
        assert_eq!(g.edge_index(3, 1), Some(1));
        assert_eq!(g.edge_index(0, 3), None);
        assert_eq!(g.degree(3), 2);
    }

    #[test]
    fn adjacency_matrix_is_symmetric() {
        let g = named::petersen();
        let a = g.adjacency_matrix();
        for i in 0..10 {
            assert_eq!(a.get(i, i), 0);
            for j in 0..10 {
                assert_eq!(a.get(i, j), a.get(j, i));
                assert_eq!(a.get(i, j) == 1, g.has_edge(i, j));
            }
        }
    }

    #[test]
    fn colors_must_cover_vertices() {
        let g = named::path(3);
        assert!(g.clone().with_colors(vec![0, 1]).is_err());
        assert_eq!(g.with_colors(vec![4, 5, 6]).unwrap().color(2), 6);
    }

    #[test]
    fn girth_values() {
        assert_eq!(named::petersen().girth(), Some(5));
        assert_eq!(named::complete(4).girth(), Some(3));
        assert_eq!(named::path(5).girth(), None);
        assert_eq!(named::cycle(6).girth(), Some(6));
    }
}
