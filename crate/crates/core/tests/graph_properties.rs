use cfi_lasserre::graph::io::{parse_edge_list, write_edge_list};
use cfi_lasserre::graph::{
    cluster, cutwidth, enumerate, expansion_bounds, expansion_exact, graph_width, named, subdivide, verify_stretching,
    CutProfile,
};
use cfi_lasserre::{ColoredGraph, Rational};
use proptest::prelude::*;

fn small_connected(max_n: usize) -> impl Strategy<Value = ColoredGraph> {
    (2..=max_n).prop_flat_map(|n| {
        let graphs = enumerate::connected_graphs(n);
        (0..graphs.len()).prop_map(move |k| graphs[k].clone())
    })
}

#[test]
fn cutwidth_equals_width_up_to_six() {
    for g in enumerate::connected_graphs_up_to(6) {
        assert_eq!(cutwidth(&g).unwrap().0, graph_width(&g).unwrap(), "{:?}", g.edges());
    }
}

#[test]
fn clustering_keeps_expansion_with_min_degree_three() {
    let mut checked = 0;
    for g in enumerate::connected_graphs_up_to(6).into_iter().filter(|g| g.min_degree() >= 3 && g.edge_count() <= 10) {
        let ex = expansion_exact(&g).unwrap().value;
        let ex_cl = expansion_exact(&cluster(&g)).unwrap().value;
        assert!(ex_cl >= ex / Rational::from_integer(g.max_degree() as i128), "{:?}", g.edges());
        checked += 1;
    }
    assert!(checked > 0);
}

#[test]
fn clustering_bound_needs_min_degree_three() {
    // the triangle: Ex = 2, its clustering is C6 with Ex = 2/3 < 2/2
    let k3 = named::complete(3);
    assert_eq!(expansion_exact(&k3).unwrap().value, Rational::from_integer(2));
    assert_eq!(expansion_exact(&cluster(&k3)).unwrap().value, Rational::new(2, 3));
}

#[test]
fn named_cutwidths() {
    assert_eq!(cutwidth(&named::complete(4)).unwrap().0, 4);
    assert_eq!(cutwidth(&named::petersen()).unwrap().0, 6);
    assert_eq!(cutwidth(&named::cycle(7)).unwrap().0, 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn witness_ordering_attains_cutwidth(g in small_connected(7)) {
        let (cw, profile) = cutwidth(&g).unwrap();
        prop_assert_eq!(CutProfile::for_ordering(&g, &profile.ordering).unwrap().width(), cw);
    }

    #[test]
    fn stretching_keeps_expansion(g in small_connected(5), counts in proptest::collection::vec(0usize..3, 10)) {
        let counts = &counts[..g.edge_count()];
        let (h, w) = subdivide(&g, counts).unwrap();
        prop_assert!(verify_stretching(&g, &h, &w).unwrap());
        prop_assume!(h.vertex_count() <= 20);
        let ex = expansion_exact(&g).unwrap().value;
        let s = Rational::from_integer(g.max_degree() as i128);
        let k = Rational::from_integer(w.k as i128);
        let t1 = Rational::from_integer(w.t as i128 + 1);
        let bound = (Rational::from_integer(2) * ex / (s * k)).min(ex / t1);
        prop_assert!(expansion_exact(&h).unwrap().value >= bound);
    }

    #[test]
    fn spectral_and_sampled_bounds_bracket(g in small_connected(7), seed in any::<u64>()) {
        let exact = expansion_exact(&g).unwrap().value;
        let b = expansion_bounds(&g, 50, seed).unwrap();
        prop_assert!(b.lower <= *exact.numer() as f64 / *exact.denom() as f64 + 1e-12);
        prop_assert!(b.upper >= exact);
    }

    #[test]
    fn edge_list_round_trip(g in small_connected(7)) {
        let back = parse_edge_list(&write_edge_list(&g)).unwrap();
        prop_assert_eq!(back.edges(), g.edges());
        prop_assert_eq!(back.vertex_count(), g.vertex_count());
    }
}
