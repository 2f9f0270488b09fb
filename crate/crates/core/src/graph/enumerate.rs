//! Exhaustive enumeration of small graphs up to isomorphism.
//!
//! Canonical forms come from individualization-refinement: an equitable
//! partition is refined with label-independent cell ordering, and the form is
//! the least adjacency bit string over all leaves of the search tree.

use std::collections::BTreeSet;

use super::ColoredGraph;

/// Upper-triangle adjacency bits in the order given by `perm` (new position
/// -> old vertex). Fits graphs on up to 11 vertices.
fn form_under(g: &ColoredGraph, order: &[usize]) -> u64 {
    let n = order.len();
    let mut bits = 0u64;
    let mut pos = 0;
    for i in 0..n {
        for j in i + 1..n {
            if g.has_edge(order[i], order[j]) {
                bits |= 1 << pos;
            }
            pos += 1;
        }
    }
    bits
}

/// Refines `cells` (cell id per vertex, ids dense and ordered) to the
/// coarsest equitable partition finer than it.
fn refine(g: &ColoredGraph, mut cells: Vec<usize>) -> Vec<usize> {
    let n = g.vertex_count();
    let mut count = cells.iter().copied().max().map_or(0, |c| c + 1);
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut hist = vec![0usize; count];
                for &w in g.neighbors(v) {
                    hist[cells[w]] += 1;
                }
                (cells[v], hist)
            })
            .collect();
        let distinct: BTreeSet<&(usize, Vec<usize>)> = sigs.iter().collect();
        if distinct.len() == count {
            return cells;
        }
        let ids: Vec<&(usize, Vec<usize>)> = distinct.into_iter().collect();
        cells = sigs.iter().map(|s| ids.binary_search(&s).unwrap()).collect();
        count = ids.len();
    }
}

fn search(g: &ColoredGraph, cells: Vec<usize>, best: &mut Option<u64>) {
    let cells = refine(g, cells);
    let n = g.vertex_count();
    let mut sizes = vec![0usize; n];
    for &c in &cells {
        sizes[c] += 1;
    }
    let target = (0..n).filter(|&c| sizes[c] > 1).min_by_key(|&c| (sizes[c], c));
    match target {
        None => {
            let mut order = vec![0; n];
            for v in 0..n {
                order[cells[v]] = v;
            }
            let f = form_under(g, &order);
            if best.is_none_or(|b| f < b) {
                *best = Some(f);
            }
        }
        Some(c) => {
            for v in (0..n).filter(|&v| cells[v] == c) {
                // split v off in front of its cell
                let next: Vec<usize> = (0..n)
                    .map(|w| {
                        let d = cells[w];
                        if d > c || (d == c && w != v) {
                            d + 1
                        } else {
                            d
                        }
                    })
                    .collect();
                search(g, next, best);
            }
        }
    }
}

/// Isomorphism-invariant code for an uncolored graph on at most 11 vertices;
/// together with the vertex count it determines the graph up to isomorphism.
pub fn canonical_form(g: &ColoredGraph) -> u64 {
    assert!(g.vertex_count() <= 11, "canonical_form supports up to 11 vertices");
    let mut best = None;
    search(g, vec![0; g.vertex_count()], &mut best);
    best.unwrap_or(0)
}

fn from_form(n: usize, form: u64) -> ColoredGraph {
    let mut edges = Vec::new();
    let mut pos = 0;
    for i in 0..n {
        for j in i + 1..n {
            if form >> pos & 1 == 1 {
                edges.push((i, j));
            }
            pos += 1;
        }
    }
    ColoredGraph::from_edges(n, &edges).expect("form encodes a simple graph")
}

/// All connected graphs on exactly `n` vertices, one per isomorphism class.
///
/// Every connected graph has a vertex whose removal keeps it connected, so
/// extending each class on `n - 1` vertices by a vertex with every nonempty
/// neighborhood reaches all classes on `n`.
pub fn connected_graphs(n: usize) -> Vec<ColoredGraph> {
    assert!(n <= 10, "enumeration budget is 10 vertices");
    if n == 0 {
        return vec![];
    }
    let mut layer: BTreeSet<u64> = BTreeSet::from([0]);
    for size in 2..=n {
        let mut next = BTreeSet::new();
        for &form in &layer {
            let base = from_form(size - 1, form);
            for mask in 1u32..(1 << (size - 1)) {
                let mut edges = base.edges().to_vec();
                edges.extend((0..size - 1).filter(|&v| mask >> v & 1 == 1).map(|v| (v, size - 1)));
                let g = ColoredGraph::from_edges(size, &edges).expect("extension is simple");
                next.insert(canonical_form(&g));
            }
        }
        layer = next;
    }
    layer.into_iter().map(|f| from_form(n, f)).collect()
}

/// All connected graphs on `1..=max_n` vertices.
pub fn connected_graphs_up_to(max_n: usize) -> Vec<ColoredGraph> {
    (1..=max_n).flat_map(connected_graphs).collect()
}

/// Connected 3-regular graphs on `n` vertices, one per isomorphism class.
pub fn cubic_graphs(n: usize) -> Vec<ColoredGraph> {
    if n < 4 || n % 2 == 1 {
        return vec![];
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let mut found = BTreeSet::new();
    let mut chosen = Vec::new();
    let mut deg = vec![0usize; n];
    fn rec(
        n: usize,
        pairs: &[(usize, usize)],
        idx: usize,
        chosen: &mut Vec<(usize, usize)>,
        deg: &mut Vec<usize>,
        found: &mut BTreeSet<u64>,
    ) {
        if chosen.len() == 3 * n / 2 {
            let g = ColoredGraph::from_edges(n, chosen).expect("simple");
            if g.is_connected() {
                found.insert(canonical_form(&g));
            }
            return;
        }
        if idx == pairs.len() {
            return;
        }
        let (a, b) = pairs[idx];
        // every pair with first endpoint below `a` has been decided
        if (0..a).any(|v| deg[v] != 3) {
            return;
        }
        if deg[a] < 3 && deg[b] < 3 {
            deg[a] += 1;
            deg[b] += 1;
            chosen.push((a, b));
            rec(n, pairs, idx + 1, chosen, deg, found);
            chosen.pop();
            deg[a] -= 1;
            deg[b] -= 1;
        }
        rec(n, pairs, idx + 1, chosen, deg, found);
    }
    rec(n, &pairs, 0, &mut chosen, &mut deg, &mut found);
    found.into_iter().map(|f| from_form(n, f)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn known_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| connected_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn cubic_counts() {
        assert_eq!(cubic_graphs(4).len(), 1);
        assert_eq!(cubic_graphs(6).len(), 2);
        assert_eq!(cubic_graphs(8).len(), 5);
    }

    #[test]
    fn canonical_form_is_label_invariant() {
        let g = named::petersen();
        let perm = [3, 7, 1, 9, 0, 5, 2, 8, 6, 4];
        let edges: Vec<_> = g.edges().iter().map(|&(a, b)| (perm[a], perm[b])).collect();
        let h = ColoredGraph::from_edges(10, &edges).unwrap();
        assert_eq!(canonical_form(&g), canonical_form(&h));
        assert_ne!(canonical_form(&named::cycle(6)), canonical_form(&named::prism()));
    }
}
