use std::collections::HashMap;

use serde::Serialize;

use super::ColoredGraph;
use crate::error::{Error, Result};

/// An injective map `V(G) -> V(H)` claimed to witness a `(k, t)`-stretching.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StretchWitness {
    pub map: Vec<usize>,
    pub k: usize,
    pub t: usize,
}

/// Checks the four stretching conditions.
///
/// Every vertex outside the image has degree 2, so a branch path (image to
/// image through non-image vertices) is determined by its first edge; all of
/// them are found by walking from every image vertex along every edge.
pub fn verify_stretching(g: &ColoredGraph, h: &ColoredGraph, w: &StretchWitness) -> Result<bool> {
    if w.map.len() != g.vertex_count() {
        return Err(Error::InvalidWitness(format!(
            "witness has {} entries for {} vertices",
            w.map.len(),
            g.vertex_count()
        )));
    }
    let mut owner = vec![None; h.vertex_count()];
    for (v, &x) in w.map.iter().enumerate() {
        if x >= h.vertex_count() {
            return Err(Error::InvalidWitness(format!("image {x} out of range")));
        }
        if owner[x].replace(v).is_some() {
            return Err(Error::InvalidWitness(format!("vertex {x} hit twice")));
        }
    }

    if (0..h.vertex_count()).any(|x| owner[x].is_none() && h.degree(x) != 2) {
        return Ok(false);
    }

    // (u, v) with u < v -> lengths of branch paths found from u's side
    let mut paths: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    let mut interior = vec![0usize; g.vertex_count()];
    for (u, &start) in w.map.iter().enumerate() {
        for &first in h.neighbors(start) {
            let (mut prev, mut cur, mut len) = (start, first, 1usize);
            while owner[cur].is_none() {
                let next = h.neighbors(cur).iter().copied().find(|&y| y != prev).expect("degree 2");
                prev = cur;
                cur = next;
                len += 1;
                if cur == start || len > h.vertex_count() {
                    break;
                }
            }
            // a chain that closes on its start is not a path between two images
            let Some(v) = owner[cur] else { continue };
            if v == u {
                continue;
            }
            if len > w.k {
                return Ok(false);
            }
            interior[u] += len - 1;
            if u < v {
                paths.entry((u, v)).or_default().push(len);
            }
        }
    }
    for u in 0..g.vertex_count() {
        for v in u + 1..g.vertex_count() {
            let count = paths.get(&(u, v)).map_or(0, Vec::len);
            if g.has_edge(u, v) != (count == 1) {
                return Ok(false);
            }
        }
    }
    Ok(interior.iter().all(|&c| c <= w.t))
}

/// Subdivides edge `i` of `g` with `counts[i]` new vertices. Returns the
/// stretched graph and the identity-on-`V(G)` witness with the tightest
/// `(k, t)`.
pub fn subdivide(g: &ColoredGraph, counts: &[usize]) -> Result<(ColoredGraph, StretchWitness)> {
    if counts.len() != g.edge_count() {
        return Err(Error::InvalidParameter(format!(
            "{} subdivision counts for {} edges",
            counts.len(),
            g.edge_count()
        )));
    }
    let mut n = g.vertex_count();
    let mut edges = Vec::new();
    let mut per_vertex = vec![0usize; g.vertex_count()];
    for (&(a, b), &c) in g.edges().iter().zip(counts) {
        let mut prev = a;
        for _ in 0..c {
            edges.push((prev, n));
            prev = n;
            n += 1;
        }
        edges.push((prev, b));
        per_vertex[a] += c;
        per_vertex[b] += c;
    }
    let h = ColoredGraph::from_edges(n, &edges)?;
    let witness = StretchWitness {
        map: (0..g.vertex_count()).collect(),
        k: counts.iter().map(|c| c + 1).max().unwrap_or(1),
        t: per_vertex.iter().copied().max().unwrap_or(0),
    };
    Ok((h, witness))
}
