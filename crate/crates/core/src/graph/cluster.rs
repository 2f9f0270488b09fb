use super::ColoredGraph;

/// Oriented edges `(u, v)` in the vertex order used by [`cluster`]:
/// grouped by `u` ascending, then `v` ascending.
pub fn cluster_labels(g: &ColoredGraph) -> Vec<(usize, usize)> {
    (0..g.vertex_count())
        .flat_map(|u| g.neighbors(u).iter().map(move |&v| (u, v)))
        .collect()
}

/// `Cl(G)`: one vertex per oriented edge, a matching edge joining `(u, v)`
/// with `(v, u)`, and a clique on each cluster `{(u, *)}`.
pub fn cluster(g: &ColoredGraph) -> ColoredGraph {
    let labels = cluster_labels(g);
    let mut start = vec![0; g.vertex_count() + 1];
    for u in 0..g.vertex_count() {
        start[u + 1] = start[u] + g.degree(u);
    }
    let id = |u: usize, v: usize| start[u] + g.neighbors(u).binary_search(&v).expect("edge");

    let mut edges = Vec::new();
    for &(u, v) in g.edges() {
        edges.push((id(u, v), id(v, u)));
    }
    for u in 0..g.vertex_count() {
        for a in start[u]..start[u + 1] {
            for b in a + 1..start[u + 1] {
                edges.push((a, b));
            }
        }
    }
    ColoredGraph::from_edges(labels.len(), &edges).expect("clustering is simple")
}
