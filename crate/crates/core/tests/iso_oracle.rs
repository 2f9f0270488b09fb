use cfi_lasserre::cfi::{build_x, build_y, parity_isomorphism, verify_isomorphism, TwistFunction};
use cfi_lasserre::graph::named;
use cfi_lasserre::iso::{automorphisms, find_isomorphism, wl_refine, IsoOutcome, SearchBudget, WlVerdict};
use cfi_lasserre::ColoredGraph;
use proptest::prelude::*;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    fn rec(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for i in k..cur.len() {
            cur.swap(k, i);
            rec(k + 1, cur, out);
            cur.swap(k, i);
        }
    }
    rec(0, &mut cur, &mut out);
    out
}

fn brute_isomorphic(g: &ColoredGraph, h: &ColoredGraph) -> bool {
    g.vertex_count() == h.vertex_count() && permutations(g.vertex_count()).iter().any(|p| verify_isomorphism(g, h, p).is_ok())
}

fn graph(n: usize, mask: u32, colors: u32) -> ColoredGraph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for a in 0..n {
        for b in a + 1..n {
            if mask >> bit & 1 == 1 {
                edges.push((a, b));
            }
            bit += 1;
        }
    }
    let colors = (0..n).map(|v| colors >> v & 1).collect();
    ColoredGraph::from_edges(n, &edges).unwrap().with_colors(colors).unwrap()
}

/// A graph and either a relabeled copy or an unrelated graph on the same
/// vertices.
fn pair() -> impl Strategy<Value = (ColoredGraph, ColoredGraph)> {
    (4usize..=7, any::<u32>(), any::<u32>(), any::<u32>(), any::<bool>(), any::<u64>())
        .prop_map(|(n, m1, m2, c, relabel, seed)| {
            let g = graph(n, m1, c);
            let h = if relabel {
                let perms = permutations(n);
                let p = &perms[(seed as usize) % perms.len()];
                let edges: Vec<_> = g.edges().iter().map(|&(a, b)| (p[a], p[b])).collect();
                let mut colors = vec![0; n];
                for v in 0..n {
                    colors[p[v]] = g.color(v);
                }
                ColoredGraph::from_edges(n, &edges).unwrap().with_colors(colors).unwrap()
            } else {
                graph(n, m2, c.rotate_left(3))
            };
            (g, h)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn search_agrees_with_brute_force((g, h) in pair()) {
        let cert = find_isomorphism(&g, &h, SearchBudget::default());
        let want = brute_isomorphic(&g, &h);
        match &cert.outcome {
            IsoOutcome::Found(map) => {
                prop_assert!(want);
                prop_assert!(verify_isomorphism(&g, &h, map).is_ok());
            }
            IsoOutcome::NoneComplete => prop_assert!(!want),
            IsoOutcome::Timeout => prop_assert!(false, "small search timed out"),
        }
    }

    #[test]
    fn wl_is_sound((g, h) in pair(), k in 1usize..=2) {
        let verdict = wl_refine(&g, &h, k).unwrap().verdict;
        if brute_isomorphic(&g, &h) {
            prop_assert_eq!(verdict, WlVerdict::Indistinguishable);
        }
    }

    #[test]
    fn pairs_refine_vertex_colors((g, _) in pair()) {
        let n = g.vertex_count();
        let one = wl_refine(&g, &g, 1).unwrap().left.colors;
        let two = wl_refine(&g, &g, 2).unwrap().left.colors;
        // the diagonal of the pair coloring splits every 1-WL class
        for a in 0..n {
            for b in 0..n {
                if two[a + a * n] == two[b + b * n] {
                    prop_assert_eq!(one[a], one[b]);
                }
            }
        }
    }
}

#[test]
fn colored_cfi_pairs() {
    let k4 = named::complete(4);
    let zero = TwistFunction::zero(6);
    let odd = TwistFunction::odd(6);
    let same = TwistFunction::on_edges(6, &[2, 4]).unwrap();
    let x0 = build_x(&k4, &zero).unwrap();
    let x1 = build_x(&k4, &odd).unwrap();
    let xs = build_x(&k4, &same).unwrap();
    let budget = SearchBudget::default();
    assert_eq!(find_isomorphism(x0.graph(), x1.graph(), budget).outcome, IsoOutcome::NoneComplete);
    let cert = find_isomorphism(x0.graph(), xs.graph(), budget);
    let found = cert.map().unwrap();
    // the constructed map and the search certificate differ by an automorphism
    let built = parity_isomorphism(&k4, &zero, &same).unwrap();
    let autos = automorphisms(xs.graph(), 4096, budget).unwrap();
    let mut inverse = vec![0; built.len()];
    for (v, &w) in built.iter().enumerate() {
        inverse[w] = v;
    }
    let delta: Vec<usize> = (0..built.len()).map(|w| found[inverse[w]]).collect();
    assert!(autos.binary_search(&delta).is_ok());
}

#[test]
fn uncolored_k4_pair() {
    let k4 = named::complete(4);
    let y0 = build_y(&k4, &TwistFunction::zero(6)).unwrap();
    let y1 = build_y(&k4, &TwistFunction::odd(6)).unwrap();
    assert_eq!(find_isomorphism(&y0, &y1, SearchBudget::default()).outcome, IsoOutcome::NoneComplete);
    for k in 1..=2 {
        assert_eq!(wl_refine(&y0, &y1, k).unwrap().verdict, WlVerdict::Indistinguishable);
    }
}

#[test]
fn gadget_automorphisms_are_even_flips() {
    let x = build_x(&named::complete(4), &TwistFunction::zero(6)).unwrap();
    let autos = automorphisms(x.graph(), 4096, SearchBudget::default()).unwrap();
    // one automorphism per element of the cycle space of K4
    assert_eq!(autos.len(), 8);
}
