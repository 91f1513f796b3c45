use proptest::prelude::*;

use spectrex_core::canon::is_isomorphic;
use spectrex_core::graph::{complete_graph, complete_multipartite, join, turan_graph, Graph};
use spectrex_core::invariants::{
    contains_subgraph, edit_distance_to_turan, matching_number, max_crossing_partition, max_disjoint_copies, Mode,
};
use spectrex_core::PartSizes;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut edges = vec![];
            let mut i = 0;
            for v in 1..n {
                for u in 0..v {
                    if bits[i] {
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn brute_matching(g: &Graph) -> usize {
    fn go(edges: &[(usize, usize)], used: u64) -> usize {
        match edges.split_first() {
            None => 0,
            Some((&(u, v), rest)) => {
                let skip = go(rest, used);
                if used >> u & 1 == 0 && used >> v & 1 == 0 {
                    skip.max(1 + go(rest, used | 1 << u | 1 << v))
                } else {
                    skip
                }
            }
        }
    }
    go(&g.edges(), 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graph_invariants(g in graph(10)) {
        let degree_sum: usize = g.degrees().iter().sum();
        prop_assert_eq!(degree_sum, 2 * g.edge_count());
        for v in 0..g.n() {
            prop_assert!(!g.has_edge(v, v));
            for u in g.neighbors(v) {
                prop_assert!(g.has_edge(u, v));
            }
        }
    }

    #[test]
    fn join_counts_and_associativity(a in graph(4), b in graph(4), c in graph(4)) {
        let ab = join(&a, &b);
        prop_assert_eq!(ab.edge_count(), a.edge_count() + b.edge_count() + a.n() * b.n());
        prop_assert!(is_isomorphic(&join(&ab, &c), &join(&a, &join(&b, &c))));
    }

    #[test]
    fn containment_is_monotone(g in graph(7), u in 0usize..7, v in 0usize..7) {
        let (u, v) = (u % g.n(), v % g.n());
        prop_assume!(u != v);
        let bigger = g.with_edge(u, v).unwrap();
        for f in [complete_graph(3), turan_graph(4, 2)] {
            if contains_subgraph(&g, &f) {
                prop_assert!(contains_subgraph(&bigger, &f));
            }
        }
        let k3 = complete_graph(3);
        let before = max_disjoint_copies(&g, &k3, 3);
        prop_assert!(max_disjoint_copies(&bigger, &k3, 3) >= before);
        prop_assert!(before <= g.n() / 3);
    }

    #[test]
    fn matching_agrees_with_exhaustive(g in graph(8)) {
        prop_assert_eq!(matching_number(&g), brute_matching(&g));
    }

    #[test]
    fn exact_partition_is_move_stable(g in graph(8), r in 2usize..4) {
        let p = max_crossing_partition(&g, r, Mode::Exact).unwrap();
        let base = p.crossing_edges(&g);
        prop_assert_eq!(base + p.internal_edges(&g), g.edge_count());
        for v in 0..g.n() {
            for target in 0..r {
                let mut moved = p.part_of.clone();
                moved[v] = target;
                let q = spectrex_core::invariants::PartitionAssignment::new(moved, r).unwrap();
                prop_assert!(q.crossing_edges(&g) <= base);
            }
        }
    }

    #[test]
    fn local_partition_degree_condition(g in graph(12), r in 2usize..4) {
        let p = max_crossing_partition(&g, r, Mode::Local).unwrap();
        for v in 0..g.n() {
            prop_assert!(p.internal_degree(&g, v) * r <= g.degree(v));
        }
    }

    #[test]
    fn edit_distance_zero_means_balanced_multipartite(g in graph(7), r in 2usize..4) {
        let (d, _) = edit_distance_to_turan(&g, r, Mode::Exact).unwrap();
        prop_assert_eq!(d == 0, is_isomorphic(&g, &turan_graph(g.n(), r)));
    }

    #[test]
    fn turan_is_balanced_multipartite(n in 0usize..40, r in 1usize..8) {
        let t = turan_graph(n, r);
        let sizes = PartSizes::balanced(n, r);
        prop_assert_eq!(&t, &complete_multipartite(&sizes));
        prop_assert_eq!(t.edge_count(), sizes.multipartite_edges());
        let (d, _) = edit_distance_to_turan(&t, r, Mode::Local).unwrap();
        prop_assert_eq!(d, 0);
    }
}

#[test]
fn complete_graph_edit_distance() {
    for n in 1..=8usize {
        let (d, _) = edit_distance_to_turan(&complete_graph(n), 2, Mode::Exact).unwrap();
        let (a, b) = (n.div_ceil(2), n / 2);
        assert_eq!(d, a * (a.saturating_sub(1)) / 2 + b * b.saturating_sub(1) / 2, "n = {n}");
    }
}
