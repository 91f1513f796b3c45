//! Finite-scale vertex classification and the low-degree peeling procedure.

use serde::{Deserialize, Serialize};

use crate::graph::Graph;
use crate::invariants::partition::PartitionAssignment;

pub const DEFAULT_THETA: f64 = 0.1;
pub const DEFAULT_EPS: f64 = 0.05;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    /// Vertices with at least `2·θ·n` neighbours inside their own part.
    pub dense: Vec<usize>,
    /// Vertices with degree at most `(1 - 1/r - ε)·n`.
    pub low: Vec<usize>,
}

pub fn classify_low_and_dense(g: &Graph, p: &PartitionAssignment, theta: f64, eps: f64) -> Classification {
    let n = g.n() as f64;
    let low_cut = (1.0 - 1.0 / p.r as f64 - eps) * n;
    Classification {
        dense: (0..g.n())
            .filter(|&v| p.internal_degree(g, v) as f64 >= 2.0 * theta * n)
            .collect(),
        low: (0..g.n()).filter(|&v| g.degree(v) as f64 <= low_cut).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PeelStep {
    /// Original label of the deleted vertex.
    pub vertex: usize,
    /// Order of the graph just before the deletion.
    pub order: usize,
    pub degree: usize,
    pub threshold: f64,
}

#[derive(Clone, Debug)]
pub struct PeelTrace {
    pub steps: Vec<PeelStep>,
    /// Original labels of the surviving vertices, ascending.
    pub survivors: Vec<usize>,
    pub terminal: Graph,
}

/// Repeatedly deletes a vertex of degree at most `(1 - 1/r - ε)·m`, where `m`
/// is the current order, until none qualifies. Among qualifying vertices the
/// one of smallest degree goes first, ties broken by smallest original label.
pub fn low_degree_peel(g: &Graph, r: usize, eps: f64) -> PeelTrace {
    let mut alive = vec![true; g.n()];
    let mut degree = g.degrees();
    let mut order = g.n();
    let mut steps = Vec::new();
    while order > 0 {
        let threshold = (1.0 - 1.0 / r as f64 - eps) * order as f64;
        let pick = (0..g.n())
            .filter(|&v| alive[v] && degree[v] as f64 <= threshold)
            .min_by_key(|&v| (degree[v], v));
        let Some(v) = pick else { break };
        steps.push(PeelStep {
            vertex: v,
            order,
            degree: degree[v],
            threshold,
        });
        alive[v] = false;
        order -= 1;
        for u in g.neighbors(v) {
            degree[u] -= 1;
        }
    }
    let survivors: Vec<usize> = (0..g.n()).filter(|&v| alive[v]).collect();
    let terminal = g.induced_subgraph(&survivors).expect("survivors are valid vertices");
    PeelTrace {
        steps,
        survivors,
        terminal,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, join, star_graph, turan_graph};

    #[test]
    fn balanced_turan_has_no_dense_vertices() {
        let t = turan_graph(12, 3);
        let p = PartitionAssignment::new((0..12).map(|v| v / 4).collect(), 3).unwrap();
        let c = classify_low_and_dense(&t, &p, 0.01, DEFAULT_EPS);
        assert!(c.dense.is_empty());
        assert!(c.low.is_empty());
    }

    #[test]
    fn hub_is_dense() {
        let g = join(&complete_graph(1), &turan_graph(8, 2));
        // hub 0 sits with the first side (vertices 1..=4)
        let part: Vec<usize> = (0..9).map(|v| usize::from(v >= 5)).collect();
        let p = PartitionAssignment::new(part, 2).unwrap();
        let c = classify_low_and_dense(&g, &p, 0.1, 0.05);
        assert_eq!(c.dense, vec![0]);
        assert!(c.low.is_empty());
    }

    #[test]
    fn isolated_vertex_is_low() {
        let g = crate::graph::disjoint_union(&turan_graph(8, 2), &Graph::empty(1));
        let p = PartitionAssignment::new(vec![0, 0, 0, 0, 1, 1, 1, 1, 0], 2).unwrap();
        assert!(classify_low_and_dense(&g, &p, 0.1, 0.05).low.contains(&8));
    }

    #[test]
    fn turan_graph_does_not_peel() {
        for (n, r) in [(10, 2), (12, 3), (9, 2)] {
            // δ(T_{n,r}) = n - ⌈n/r⌉ > (1 - 1/r - ε)n for ε = 0.15 at these orders
            assert!(low_degree_peel(&turan_graph(n, r), r, 0.15).steps.is_empty());
        }
        assert!(low_degree_peel(&Graph::empty(0), 2, 0.1).steps.is_empty());
    }

    #[test]
    fn star_peels_to_an_edge() {
        let trace = low_degree_peel(&star_graph(5), 2, 0.1);
        let peeled: Vec<usize> = trace.steps.iter().map(|s| s.vertex).collect();
        assert_eq!(peeled, vec![1, 2, 3, 4]);
        assert_eq!(trace.survivors, vec![0, 5]);
        assert_eq!(trace.terminal, complete_graph(2));
    }
}
