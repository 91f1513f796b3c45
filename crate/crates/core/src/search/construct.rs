//! The join construction `K_{k-1} ∨ G(n-k+1, F)` and its edge count.

use serde::{Deserialize, Serialize};

use crate::canon::canonical_form;
use crate::error::{Error, Result};
use crate::graph::{complete_graph, join, turan_edges, turan_graph, Graph};
use crate::graph6;
use crate::invariants::{is_family_free, ProblemSpec};
use crate::search::extremal::{edge_extremal, SearchOptions};

/// Smallest order at which the construction is built: `k·|V(F)|`.
/// Below it every graph is kF-free, so `K_n` is the only extremal graph.
pub fn construction_threshold(spec: &ProblemSpec) -> usize {
    spec.k() * spec.forbidden().n()
}

/// `K_{k-1} ∨ G` for every `G ∈ EX(n-k+1, F)`, each checked to be kF-free.
///
/// For complete `F = K_{r+1}` the extremal graph is `T_{n-k+1,r}` and no search
/// is run; otherwise `EX(n-k+1, F)` comes from [`edge_extremal`].
pub fn construct_candidates(n: usize, spec: &ProblemSpec, opts: &SearchOptions) -> Result<Vec<Graph>> {
    let threshold = construction_threshold(spec);
    if n < threshold {
        return Err(Error::Input(format!(
            "n = {n} is too small for the construction; need n >= k·|V(F)| = {threshold}"
        )));
    }
    let k = spec.k();
    let m = n - (k - 1);
    let bases = if spec.forbidden().is_complete() {
        vec![turan_graph(m, spec.r())]
    } else {
        edge_extremal(m, &spec.single(), opts)?
            .graphs
            .iter()
            .map(|s| graph6::decode(s))
            .collect::<Result<Vec<_>>>()?
    };
    let clique = complete_graph(k - 1);
    let mut out = Vec::with_capacity(bases.len());
    for base in bases {
        let g = join(&clique, &base);
        if !is_family_free(&g, spec) {
            if spec.r_overridden() {
                return Err(Error::Input(format!(
                    "with r overridden to {} the construction contains {k} disjoint copies of F",
                    spec.r()
                )));
            }
            return Err(Error::Invariant(format!(
                "construction {} contains {} disjoint copies of F",
                graph6::encode(&g),
                k
            )));
        }
        out.push(g);
    }
    Ok(out)
}

/// Canonical graph6 strings of the construction, sorted.
pub fn construction_classes(n: usize, spec: &ProblemSpec, opts: &SearchOptions) -> Result<Vec<String>> {
    let mut v: Vec<String> = construct_candidates(n, spec, opts)?
        .iter()
        .map(|g| graph6::encode(&canonical_form(g)))
        .collect();
    v.sort();
    v.dedup();
    Ok(v)
}

/// `e(T_{n-k+1,r}) + (k-1)n + a - k(k-1)/2`.
pub fn lower_bound_edges(n: usize, spec: &ProblemSpec) -> Result<i64> {
    let k = spec.k();
    let a = spec
        .excess()
        .ok_or_else(|| Error::Input("the excess a is unknown; assert it or measure it first".into()))?;
    if n + 1 < k {
        return Err(Error::Input(format!("n = {n} is smaller than k - 1 = {}", k - 1)));
    }
    let base = turan_edges(n - k + 1, spec.r()) as i64;
    Ok(base + ((k - 1) * n) as i64 + a - (k * (k - 1) / 2) as i64)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExcessMeasurement {
    /// `(n, ex(n, F) - e(T_{n,r}))` for each measured order.
    pub values: Vec<(usize, i64)>,
    /// The common value on the upper half of the range.
    pub a: i64,
}

/// Measures `a(n) = ex(n, F) - e(T_{n,r})` over `ns` and requires it to be
/// constant on the upper half of the range.
pub fn measure_excess(
    spec: &ProblemSpec,
    ns: std::ops::RangeInclusive<usize>,
    opts: &SearchOptions,
) -> Result<ExcessMeasurement> {
    if ns.is_empty() {
        return Err(Error::Input("empty range for measuring the excess".into()));
    }
    let single = spec.single();
    let mut values = Vec::new();
    for n in ns {
        let cat = edge_extremal(n, &single, opts)?;
        let ex = cat.value.as_f64() as i64;
        values.push((n, ex - turan_edges(n, spec.r()) as i64));
    }
    let top = &values[values.len() / 2..];
    let a = top[0].1;
    if let Some(&(n, other)) = top.iter().find(|&&(_, v)| v != a) {
        return Err(Error::Input(format!(
            "excess is not constant on the upper half of the range: a({}) = {a} but a({n}) = {other}",
            top[0].0
        )));
    }
    Ok(ExcessMeasurement { values, a })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::cycle_graph;

    fn k3(k: usize) -> ProblemSpec {
        ProblemSpec::new(complete_graph(3), k).unwrap()
    }

    #[test]
    fn join_constructions() {
        let opts = SearchOptions::default();
        let c = construct_candidates(9, &k3(2), &opts).unwrap();
        assert_eq!((c.len(), c[0].n(), c[0].edge_count()), (1, 9, 24));
        let c = construct_candidates(7, &k3(2), &opts).unwrap();
        assert_eq!(c[0].edge_count(), 15);
        let k4 = ProblemSpec::new(complete_graph(4), 1).unwrap();
        let c = construct_candidates(8, &k4, &opts).unwrap();
        assert_eq!(canonical_form(&c[0]), canonical_form(&turan_graph(8, 3)));
        assert!(construct_candidates(4, &k3(2), &opts).is_err());
    }

    #[test]
    fn lower_bound_formula() {
        assert_eq!(lower_bound_edges(8, &k3(2)).unwrap(), 19);
        assert_eq!(lower_bound_edges(7, &k3(2)).unwrap(), 15);
        for n in 1..20 {
            assert_eq!(lower_bound_edges(n, &k3(1)).unwrap(), turan_edges(n, 2) as i64);
        }
        let c5 = ProblemSpec::new(cycle_graph(5), 1).unwrap();
        assert!(lower_bound_edges(8, &c5).is_err());
    }

    #[test]
    fn c5_excess_is_zero_from_six_vertices() {
        let c5 = ProblemSpec::new(cycle_graph(5), 1).unwrap();
        let m = measure_excess(&c5, 6..=8, &SearchOptions::default()).unwrap();
        assert_eq!(m.a, 0);
    }
}
