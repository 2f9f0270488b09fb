//! CFI gadgets and the graphs `X_f(G)`, `Y_f(G)`.
//!
//! Each base vertex `v` with neighbors `u_1 < u_2 < ...` becomes a gadget:
//! one middle vertex per even-parity bit vector over the neighbors, and an
//! exterior pair `(v, u_i)_0`, `(v, u_i)_1` per neighbor. The middle vertex
//! with bits `b` is adjacent to `(v, u_i)_{b_i}` for every `i`. Cross edges
//! join `(v, u)_b` with `(u, v)_{b ^ f(uv)}`.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::ColoredGraph;

/// A 0/1 label per base edge, indexed by canonical edge position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwistFunction {
    bits: Vec<bool>,
}

impl TwistFunction {
    pub fn zero(edge_count: usize) -> Self {
        Self { bits: vec![false; edge_count] }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    /// Twist on exactly the listed edge positions.
    pub fn on_edges(edge_count: usize, edges: &[usize]) -> Result<Self> {
        let mut bits = vec![false; edge_count];
        for &e in edges {
            if e >= edge_count {
                return Err(Error::InvalidParameter(format!("edge index {e} out of range")));
            }
            bits[e] ^= true;
        }
        Ok(Self { bits })
    }

    /// A single twisted edge (the first one): odd parity.
    pub fn odd(edge_count: usize) -> Self {
        let mut t = Self::zero(edge_count);
        if edge_count > 0 {
            t.bits[0] = true;
        }
        t
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, e: usize) -> bool {
        self.bits[e]
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn parity(&self) -> bool {
        self.bits.iter().fold(false, |p, &b| p ^ b)
    }

    pub fn xor(&self, other: &Self) -> Self {
        Self {
            bits: self.bits.iter().zip(&other.bits).map(|(a, b)| a ^ b).collect(),
        }
    }

    /// Parses `0`/`1` tokens, one per base edge, separated by whitespace.
    pub fn parse(text: &str, edge_count: usize) -> Result<Self> {
        let bits: Vec<bool> = text
            .split_whitespace()
            .enumerate()
            .map(|(i, tok)| match tok {
                "0" => Ok(false),
                "1" => Ok(true),
                _ => Err(Error::Parse { line: 0, msg: format!("twist token {i} is `{tok}`, expected 0 or 1") }),
            })
            .collect::<Result<_>>()?;
        if bits.len() != edge_count {
            return Err(Error::Parse {
                line: 0,
                msg: format!("{} twist bits for {edge_count} edges", bits.len()),
            });
        }
        Ok(Self { bits })
    }
}

/// Structured name of a vertex of `X_f(G)`.
///
/// `bits` holds bit `i` for the `i`-th neighbor of `v` in ascending order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CfiVertexId {
    Middle { v: usize, bits: u32 },
    Edge { v: usize, u: usize, bit: u8 },
}

impl CfiVertexId {
    pub fn base_vertex(&self) -> usize {
        match *self {
            CfiVertexId::Middle { v, .. } | CfiVertexId::Edge { v, .. } => v,
        }
    }

    pub fn is_middle(&self) -> bool {
        matches!(self, CfiVertexId::Middle { .. })
    }
}

impl fmt::Display for CfiVertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CfiVertexId::Middle { v, bits } => write!(f, "{v}:M{bits:b}"),
            CfiVertexId::Edge { v, u, bit } => write!(f, "({v},{u})_{bit}"),
        }
    }
}

fn even_masks(deg: usize) -> Vec<u32> {
    // lexicographic on (b_{u_1}, ..., b_{u_d}), i.e. bit 0 most significant
    let key = |m: u32| (0..deg).fold(0u32, |k, i| (k << 1) | (m >> i & 1));
    let mut masks: Vec<u32> = (0..1u32 << deg).filter(|m| m.count_ones() % 2 == 0).collect();
    masks.sort_by_key(|&m| key(m));
    masks
}

/// `X_f(G)` with the bidirectional index between flat and structured ids.
#[derive(Clone, Debug)]
pub struct CfiGraph {
    base: ColoredGraph,
    twist: TwistFunction,
    graph: ColoredGraph,
    ids: Vec<CfiVertexId>,
    offsets: Vec<usize>,
    middles: Vec<Vec<u32>>,
    base_colors: Vec<u32>,
}

fn base_colors(base: &ColoredGraph) -> Result<Vec<u32>> {
    match base.colors() {
        None => Ok((0..base.vertex_count() as u32).collect()),
        Some(c) => {
            let mut sorted = c.to_vec();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != c.len() {
                return Err(Error::InvalidGraph("base vertices must be uniquely colored".into()));
            }
            Ok(c.to_vec())
        }
    }
}

impl CfiGraph {
    /// Builds `X_f(G)` for a connected 3-regular base graph.
    pub fn build(base: &ColoredGraph, twist: &TwistFunction) -> Result<Self> {
        if !base.is_regular(3) || base.vertex_count() == 0 {
            return Err(Error::NotCubic(format!(
                "degrees range over {}..={}",
                base.min_degree(),
                base.max_degree()
            )));
        }
        if !base.is_connected() {
            return Err(Error::InvalidGraph("base graph must be connected".into()));
        }
        Self::build_any_degree(base, twist)
    }

    /// Same construction for arbitrary degrees; isolated vertices are rejected.
    pub fn build_any_degree(base: &ColoredGraph, twist: &TwistFunction) -> Result<Self> {
        if twist.len() != base.edge_count() {
            return Err(Error::InvalidParameter(format!(
                "twist has {} bits for {} edges",
                twist.len(),
                base.edge_count()
            )));
        }
        if base.max_degree() > 16 {
            return Err(Error::InvalidGraph("gadgets support degree at most 16".into()));
        }
        if (0..base.vertex_count()).any(|v| base.degree(v) == 0) {
            return Err(Error::InvalidGraph("isolated base vertex has no gadget".into()));
        }
        let colors_in = base_colors(base)?;
        let stride = base.max_degree() as u32 + 1;
        let n = base.vertex_count();

        let mut ids = Vec::new();
        let mut colors = Vec::new();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut middles = Vec::with_capacity(n);
        for v in 0..n {
            offsets.push(ids.len());
            let masks = even_masks(base.degree(v));
            for &bits in &masks {
                ids.push(CfiVertexId::Middle { v, bits });
                colors.push(colors_in[v] * stride);
            }
            for (i, &u) in base.neighbors(v).iter().enumerate() {
                for bit in 0..2 {
                    ids.push(CfiVertexId::Edge { v, u, bit });
                    colors.push(colors_in[v] * stride + 1 + i as u32);
                }
            }
            middles.push(masks);
        }
        offsets.push(ids.len());

        let mut me = Self {
            base: base.clone(),
            twist: twist.clone(),
            graph: ColoredGraph::empty(0),
            ids,
            offsets,
            middles,
            base_colors: colors_in,
        };
        let mut edges = Vec::new();
        for v in 0..n {
            for (k, &bits) in me.middles[v].iter().enumerate() {
                let mid = me.offsets[v] + k;
                for (i, &u) in base.neighbors(v).iter().enumerate() {
                    edges.push((mid, me.edge_vertex(v, u, (bits >> i & 1) as u8)));
                }
            }
        }
        for (e, &(a, b)) in base.edges().iter().enumerate() {
            let t = twist.get(e) as u8;
            for bit in 0..2u8 {
                edges.push((me.edge_vertex(a, b, bit), me.edge_vertex(b, a, bit ^ t)));
            }
        }
        me.graph = ColoredGraph::from_edges(me.ids.len(), &edges)?.with_colors(colors)?;
        Ok(me)
    }

    pub fn graph(&self) -> &ColoredGraph {
        &self.graph
    }

    pub fn base(&self) -> &ColoredGraph {
        &self.base
    }

    pub fn twist(&self) -> &TwistFunction {
        &self.twist
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn id(&self, x: usize) -> CfiVertexId {
        self.ids[x]
    }

    pub fn ids(&self) -> &[CfiVertexId] {
        &self.ids
    }

    /// Position of `u` among the neighbors of `v`.
    pub fn neighbor_position(&self, v: usize, u: usize) -> Option<usize> {
        self.base.neighbors(v).binary_search(&u).ok()
    }

    pub fn gadget_range(&self, v: usize) -> std::ops::Range<usize> {
        self.offsets[v]..self.offsets[v + 1]
    }

    pub fn middle_masks(&self, v: usize) -> &[u32] {
        &self.middles[v]
    }

    pub fn middle(&self, v: usize, bits: u32) -> Option<usize> {
        self.middles[v].iter().position(|&m| m == bits).map(|k| self.offsets[v] + k)
    }

    /// Flat id of `(v, u)_bit`. Panics when `uv` is not a base edge.
    pub fn edge_vertex(&self, v: usize, u: usize, bit: u8) -> usize {
        let i = self.neighbor_position(v, u).expect("(v, u) must be a base edge");
        self.offsets[v] + self.middles[v].len() + 2 * i + bit as usize
    }

    pub fn index_of(&self, id: &CfiVertexId) -> Option<usize> {
        match *id {
            CfiVertexId::Middle { v, bits } => {
                if v >= self.base.vertex_count() {
                    return None;
                }
                self.middle(v, bits)
            }
            CfiVertexId::Edge { v, u, bit } => {
                if v >= self.base.vertex_count() || bit > 1 || !self.base.has_edge(v, u) {
                    return None;
                }
                Some(self.edge_vertex(v, u, bit))
            }
        }
    }

    pub fn is_middle(&self, x: usize) -> bool {
        self.ids[x].is_middle()
    }

    pub fn base_color(&self, v: usize) -> u32 {
        self.base_colors[v]
    }

    /// `Y_f(G)`: the same graph without colors.
    pub fn uncolored(&self) -> ColoredGraph {
        self.graph.without_colors()
    }

    pub fn labels(&self) -> Vec<String> {
        self.ids.iter().map(|id| id.to_string()).collect()
    }

    /// Sidecar mapping flat ids to structured descriptions.
    pub fn sidecar(&self) -> serde_json::Value {
        let vertices: Vec<serde_json::Value> = self
            .ids
            .iter()
            .enumerate()
            .map(|(x, id)| match *id {
                CfiVertexId::Middle { v, bits } => {
                    let b: Vec<u32> = (0..self.base.degree(v)).map(|i| bits >> i & 1).collect();
                    serde_json::json!({ "id": x, "kind": "middle", "v": v, "bits": b })
                }
                CfiVertexId::Edge { v, u, bit } => {
                    serde_json::json!({ "id": x, "kind": "edge", "v": v, "u": u, "bit": bit })
                }
            })
            .collect();
        serde_json::json!({
            "schema": 1,
            "base_vertices": self.base.vertex_count(),
            "twist": self.twist.bits().iter().map(|&b| b as u8).collect::<Vec<_>>(),
            "vertices": vertices,
        })
    }
}

/// `X_f(G)` and `X_g(G)` over the same base graph; both share one numbering,
/// so a vertex and its counterpart have the same flat id and color.
#[derive(Clone, Debug)]
pub struct CfiPair {
    pub xf: CfiGraph,
    pub xg: CfiGraph,
}

impl CfiPair {
    pub fn build(base: &ColoredGraph, f: &TwistFunction, g: &TwistFunction) -> Result<Self> {
        Ok(Self {
            xf: CfiGraph::build(base, f)?,
            xg: CfiGraph::build(base, g)?,
        })
    }

    pub fn base(&self) -> &ColoredGraph {
        self.xf.base()
    }

    pub fn f(&self) -> &TwistFunction {
        self.xf.twist()
    }

    pub fn g(&self) -> &TwistFunction {
        self.xg.twist()
    }

    pub fn vertex_count(&self) -> usize {
        self.xf.vertex_count()
    }

    /// Vertices of `X_g(G)` with the color of `i` in `X_f(G)`.
    pub fn same_color_targets(&self, i: usize) -> Vec<usize> {
        let c = self.xf.graph().color(i);
        let base_v = self.xf.id(i).base_vertex();
        self.xg
            .gadget_range(base_v)
            .filter(|&j| self.xg.graph().color(j) == c)
            .collect()
    }
}

pub fn build_x(base: &ColoredGraph, twist: &TwistFunction) -> Result<CfiGraph> {
    CfiGraph::build(base, twist)
}

pub fn build_y(base: &ColoredGraph, twist: &TwistFunction) -> Result<ColoredGraph> {
    Ok(CfiGraph::build(base, twist)?.uncolored())
}

/// The standalone gadget `CFI(v)` for three neighbors: middles first, in
/// lexicographic bit order, then the pairs in neighbor order.
pub fn cfi_gadget(neighbors: &[usize], base_color: u32) -> Result<ColoredGraph> {
    if neighbors.len() != 3 {
        return Err(Error::InvalidParameter(format!(
            "gadget needs exactly 3 neighbors, got {}",
            neighbors.len()
        )));
    }
    let mut sorted = neighbors.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != 3 {
        return Err(Error::InvalidParameter("neighbors must be distinct".into()));
    }
    let masks = even_masks(3);
    let mut edges = Vec::new();
    for (k, &m) in masks.iter().enumerate() {
        for i in 0..3 {
            edges.push((k, 4 + 2 * i + (m >> i & 1) as usize));
        }
    }
    let mut colors = vec![base_color * 4; 4];
    for i in 0..3 {
        colors.extend([base_color * 4 + 1 + i, base_color * 4 + 1 + i]);
    }
    ColoredGraph::from_edges(10, &edges)?.with_colors(colors)
}

/// Path `p_1 .. p_k` whose first edge is `e1` and last edge is `e2`, found by
/// BFS between the inner endpoints while avoiding the outer ones.
fn connecting_path(base: &ColoredGraph, e1: (usize, usize), e2: (usize, usize)) -> Option<Vec<usize>> {
    let mut best: Option<Vec<usize>> = None;
    for (p1, p2) in [(e1.0, e1.1), (e1.1, e1.0)] {
        for (q, pk) in [(e2.0, e2.1), (e2.1, e2.0)] {
            if p1 == pk || p1 == q || pk == p2 {
                continue;
            }
            let n = base.vertex_count();
            let mut prev = vec![usize::MAX; n];
            let mut queue = VecDeque::from([p2]);
            prev[p2] = p2;
            while let Some(x) = queue.pop_front() {
                if x == q {
                    break;
                }
                for &y in base.neighbors(x) {
                    if prev[y] == usize::MAX && y != p1 && y != pk {
                        prev[y] = x;
                        queue.push_back(y);
                    }
                }
            }
            if prev[q] == usize::MAX {
                continue;
            }
            let mut inner = vec![q];
            while *inner.last().unwrap() != p2 {
                inner.push(prev[*inner.last().unwrap()]);
            }
            inner.reverse();
            let mut path = vec![p1];
            path.extend(inner);
            path.push(pk);
            if best.as_ref().is_none_or(|b| path.len() < b.len()) {
                best = Some(path);
            }
        }
    }
    best
}

/// Maps `v_b -> v_{b ^ flip_v}` and `(v, u_i)_b -> (v, u_i)_{b ^ flip_v[i]}`.
pub fn flip_map(x: &CfiGraph, flips: &[u32]) -> Vec<usize> {
    (0..x.vertex_count())
        .map(|p| match x.id(p) {
            CfiVertexId::Middle { v, bits } => x.middle(v, bits ^ flips[v]).expect("even flip keeps parity"),
            CfiVertexId::Edge { v, u, bit } => {
                let i = x.neighbor_position(v, u).unwrap();
                x.edge_vertex(v, u, bit ^ (flips[v] >> i & 1) as u8)
            }
        })
        .collect()
}

/// Checks that `map` is a color-preserving isomorphism `g -> h`.
pub fn verify_isomorphism(g: &ColoredGraph, h: &ColoredGraph, map: &[usize]) -> Result<()> {
    let n = g.vertex_count();
    if h.vertex_count() != n || map.len() != n || g.edge_count() != h.edge_count() {
        return Err(Error::NotIsomorphism("sizes differ".into()));
    }
    let mut hit = vec![false; n];
    for &y in map {
        if y >= n || std::mem::replace(&mut hit[y], true) {
            return Err(Error::NotIsomorphism("map is not a bijection".into()));
        }
    }
    if let Some(x) = (0..n).find(|&x| g.color(x) != h.color(map[x])) {
        return Err(Error::NotIsomorphism(format!("vertex {x} changes color")));
    }
    if let Some(&(a, b)) = g.edges().iter().find(|&&(a, b)| !h.has_edge(map[a], map[b])) {
        return Err(Error::NotIsomorphism(format!("edge ({a}, {b}) is not preserved")));
    }
    Ok(())
}

/// An explicit isomorphism `X_f(G) -> X_g(G)` for twists of equal parity.
///
/// Differing edges are paired up; for each pair a path with those edges at
/// its ends is flipped at every interior vertex, which moves the twist from
/// one end to the other. The flips of all pairs are accumulated per gadget.
pub fn parity_isomorphism(base: &ColoredGraph, f: &TwistFunction, g: &TwistFunction) -> Result<Vec<usize>> {
    if f.parity() != g.parity() {
        return Err(Error::ParityMismatch);
    }
    let xf = build_x(base, f)?;
    let xg = build_x(base, g)?;
    let diff: Vec<usize> = (0..base.edge_count()).filter(|&e| f.get(e) != g.get(e)).collect();
    let mut flips = vec![0u32; base.vertex_count()];
    for pair in diff.chunks(2) {
        let e1 = base.edges()[pair[0]];
        let e2 = base.edges()[pair[1]];
        let path = connecting_path(base, e1, e2)
            .ok_or_else(|| Error::InvalidGraph("no path joins the twisted edges".into()))?;
        for w in path.windows(3) {
            let (prev, mid, next) = (w[0], w[1], w[2]);
            flips[mid] ^= 1 << xf.neighbor_position(mid, prev).unwrap();
            flips[mid] ^= 1 << xf.neighbor_position(mid, next).unwrap();
        }
    }
    let map = flip_map(&xf, &flips);
    verify_isomorphism(xf.graph(), xg.graph(), &map)?;
    Ok(map)
}

/// Ball sizes at radius 3, split by vertex kind.
pub fn ball3_sizes(x: &CfiGraph) -> HashMap<bool, Vec<usize>> {
    let mut out: HashMap<bool, Vec<usize>> = HashMap::new();
    for p in 0..x.vertex_count() {
        out.entry(x.is_middle(p)).or_default().push(x.graph().ball_size(p, 3));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn gadget_shape() {
        let g = cfi_gadget(&[1, 2, 3], 0).unwrap();
        assert_eq!(g.vertex_count(), 10);
        assert_eq!(g.edge_count(), 12);
        for v in 0..4 {
            assert_eq!(g.degree(v), 3);
        }
        for v in 4..10 {
            assert_eq!(g.degree(v), 2);
        }
        assert!(cfi_gadget(&[1, 2], 0).is_err());
        assert!(cfi_gadget(&[1, 1, 2], 0).is_err());
    }

    #[test]
    fn middle_order_is_lexicographic() {
        assert_eq!(even_masks(3), vec![0b000, 0b110, 0b101, 0b011]);
    }

    #[test]
    fn k4_counts() {
        let k4 = named::complete(4);
        let x = build_x(&k4, &TwistFunction::odd(6)).unwrap();
        assert_eq!(x.vertex_count(), 40);
        assert_eq!(x.graph().edge_count(), 60);
        let y = build_y(&k4, &TwistFunction::zero(6)).unwrap();
        assert!(y.colors().is_none());
        assert!(y.is_regular(3));
    }

    #[test]
    fn index_round_trip() {
        let x = build_x(&named::petersen(), &TwistFunction::zero(15)).unwrap();
        for p in 0..x.vertex_count() {
            assert_eq!(x.index_of(&x.id(p)), Some(p));
        }
        assert_eq!(x.index_of(&CfiVertexId::Middle { v: 0, bits: 1 }), None);
        assert_eq!(x.index_of(&CfiVertexId::Edge { v: 0, u: 2, bit: 0 }), None);
    }

    #[test]
    fn rejects_non_cubic() {
        assert!(matches!(build_x(&named::cycle(4), &TwistFunction::zero(4)), Err(Error::NotCubic(_))));
        assert!(build_x(&named::complete(4), &TwistFunction::zero(5)).is_err());
    }

    #[test]
    fn parity_isomorphisms() {
        let k4 = named::complete(4);
        let z = TwistFunction::zero(6);
        assert_eq!(parity_isomorphism(&k4, &z, &z).unwrap(), (0..40).collect::<Vec<_>>());
        // edges 0 = (0,1) and 1 = (0,2) share vertex 0
        let adj = TwistFunction::on_edges(6, &[0, 1]).unwrap();
        parity_isomorphism(&k4, &z, &adj).unwrap();
        // (0,1) and (2,3) are disjoint
        let disj = TwistFunction::on_edges(6, &[0, 5]).unwrap();
        parity_isomorphism(&k4, &z, &disj).unwrap();
        let four = TwistFunction::on_edges(6, &[0, 1, 2, 5]).unwrap();
        parity_isomorphism(&k4, &adj, &four).unwrap();
        assert_eq!(parity_isomorphism(&k4, &z, &TwistFunction::odd(6)), Err(Error::ParityMismatch));
    }

    #[test]
    fn petersen_ball_sizes() {
        let x = build_x(&named::petersen(), &TwistFunction::odd(15)).unwrap();
        let balls = ball3_sizes(&x);
        assert!(balls[&true].iter().all(|&s| s == 19));
        assert!(balls[&false].iter().all(|&s| s == 20));
    }

    #[test]
    fn twist_parsing() {
        assert!(TwistFunction::parse("0 1 0", 3).unwrap().parity());
        assert!(TwistFunction::parse("0 2 0", 3).is_err());
        assert!(TwistFunction::parse("0 1", 3).is_err());
    }
}
