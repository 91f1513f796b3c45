use nalgebra::DMatrix;
use proptest::prelude::*;

use spectrex_core::graph::{complete_graph, join, turan_graph, Graph};
use spectrex_core::search::enumerate;
use spectrex_core::spectral::{rayleigh_quotient, spectral_radius};

const TOL: f64 = 1e-11;

fn dense_rho(g: &Graph) -> f64 {
    let n = g.n();
    let m = DMatrix::from_fn(n, n, |i, j| if g.has_edge(i, j) { 1.0 } else { 0.0 });
    m.symmetric_eigenvalues().iter().copied().fold(f64::MIN, f64::max)
}

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(0.0f64..1.0, n * (n - 1) / 2).prop_map(move |p| {
            let mut edges = vec![];
            let mut i = 0;
            for v in 1..n {
                for u in 0..v {
                    if p[i] < 0.4 {
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

#[test]
fn every_graph_up_to_seven_matches_dense_solver() {
    for n in 1..=7 {
        enumerate(n, 11, &|_: &Graph| true, &mut |g| {
            let r = spectral_radius(g, TOL).unwrap();
            let want = dense_rho(g);
            assert!((r.rho - want).abs() <= r.residual + 1e-9, "{g:?}: {} vs {want}", r.rho);
            assert!(g.min_degree() as f64 <= r.upper() && r.lower() <= g.max_degree() as f64);
        })
        .unwrap();
    }
}

#[test]
fn join_lower_bound_by_average_degree() {
    for k in 1..=3 {
        for n in k + 2..=60 {
            let g = join(&complete_graph(k - 1), &turan_graph(n - k + 1, 2));
            let r = spectral_radius(&g, TOL).unwrap();
            assert!(r.upper() >= 2.0 * g.edge_count() as f64 / n as f64, "k={k} n={n}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn random_graphs_match_dense_solver(g in graph(40)) {
        let r = spectral_radius(&g, TOL).unwrap();
        prop_assert!((r.rho - dense_rho(&g)).abs() <= r.residual + 1e-9);
        prop_assert!((r.vector.iter().copied().fold(0.0, f64::max) - 1.0).abs() < 1e-15 || g.edge_count() == 0);
        let ones = vec![1.0; g.n()];
        prop_assert!(rayleigh_quotient(&g, &ones).unwrap() <= r.upper() + 1e-12);
    }

    #[test]
    fn perron_vector_positive_when_connected(g in graph(20)) {
        prop_assume!(g.is_connected() && g.n() > 1);
        let r = spectral_radius(&g, TOL).unwrap();
        prop_assert!(r.vector.iter().all(|&x| x > 0.0 && x <= 1.0));
        let q = rayleigh_quotient(&g, &r.vector).unwrap();
        prop_assert!((q - r.rho).abs() < 1e-9);
    }
}
