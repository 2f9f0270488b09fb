//! Small named graphs used by tests, fixtures and the CLI.

use super::ColoredGraph;

pub fn complete(n: usize) -> ColoredGraph {
    let edges: Vec<_> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    ColoredGraph::from_edges(n, &edges).expect("complete graph is simple")
}

pub fn path(n: usize) -> ColoredGraph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    ColoredGraph::from_edges(n, &edges).expect("path is simple")
}

pub fn cycle(n: usize) -> ColoredGraph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    ColoredGraph::from_edges(n, &edges).expect("cycle is simple")
}

/// Star with center 0 and `n - 1` leaves.
pub fn star(n: usize) -> ColoredGraph {
    let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
    ColoredGraph::from_edges(n, &edges).expect("star is simple")
}

pub fn petersen() -> ColoredGraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    ColoredGraph::from_edges(10, &edges).expect("Petersen graph is simple")
}

/// Complete bipartite graph `K_{a,b}`.
pub fn complete_bipartite(a: usize, b: usize) -> ColoredGraph {
    let edges: Vec<_> = (0..a)
        .flat_map(|i| (0..b).map(move |j| (i, a + j)))
        .collect();
    ColoredGraph::from_edges(a + b, &edges).expect("K_{a,b} is simple")
}

/// Triangular prism (two triangles joined by a matching).
pub fn prism() -> ColoredGraph {
    ColoredGraph::from_edges(
        6,
        &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)],
    )
    .expect("prism is simple")
}

/// Disjoint union of two triangles.
pub fn two_triangles() -> ColoredGraph {
    ColoredGraph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
        .expect("two triangles are simple")
}
