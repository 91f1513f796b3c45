//! Isomorph-free generation by canonical augmentation.
//!
//! Graphs grow one vertex at a time. A child `G' = P + v` of a canonical
//! parent `P` is kept only if `G' − v ≅ G' − w`, where `w` is the vertex
//! placed last by the canonical labelling of `G'`; that makes `P` the unique
//! parent class of `G'`. Children of the same parent are deduplicated by
//! canonical form. Every emitted graph is in canonical form.
//!
//! The admissibility predicate must be hereditary (closed under deleting
//! vertices); branches whose root fails it are cut.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::canon::{label_masks, orbits};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6;
use crate::invariants::{is_family_free, ProblemSpec};

/// Default largest order accepted by the enumerator.
pub const DEFAULT_ORDER_CAP: usize = 11;
/// Hard ceiling; the canonical labelling works on single-word rows.
pub const MAX_ENUMERATION_ORDER: usize = 16;

/// A hereditary graph property used to prune the augmentation tree.
pub type Admits<'a> = dyn Fn(&Graph) -> bool + Sync + 'a;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationStats {
    /// Accepted nodes of the augmentation tree, all orders.
    pub nodes_visited: u64,
    /// Augmentations rejected by the predicate.
    pub pruned: u64,
}

impl EnumerationStats {
    pub fn absorb(&mut self, other: EnumerationStats) {
        self.nodes_visited += other.nodes_visited;
        self.pruned += other.pruned;
    }
}

pub fn check_order(n: usize, cap: usize) -> Result<()> {
    let limit = cap.min(MAX_ENUMERATION_ORDER);
    if n > limit {
        return Err(Error::capability(
            format!("exhaustive enumeration at order {n}"),
            limit,
            format!("raise the order cap (at most {MAX_ENUMERATION_ORDER}) to go further"),
        ));
    }
    Ok(())
}

/// Canonical children of the canonical graph `parent`, sorted by canonical form.
pub fn augment(parent: &Graph, admits: &Admits<'_>, stats: &mut EnumerationStats) -> Vec<Graph> {
    augment_inner(parent, admits, stats, None)
}

/// Like [`augment`], also returning every augmentation the predicate rejected.
pub fn augment_with_rejects(
    parent: &Graph,
    admits: &Admits<'_>,
    stats: &mut EnumerationStats,
) -> (Vec<Graph>, Vec<Graph>) {
    let mut rejected = Vec::new();
    let kept = augment_inner(parent, admits, stats, Some(&mut rejected));
    (kept, rejected)
}

fn augment_inner(
    parent: &Graph,
    admits: &Admits<'_>,
    stats: &mut EnumerationStats,
    mut rejected: Option<&mut Vec<Graph>>,
) -> Vec<Graph> {
    let m = parent.n();
    assert!(m < MAX_ENUMERATION_ORDER, "augmentation beyond the enumeration ceiling");
    let masks = parent.masks().expect("enumeration works on single-word rows");
    let deg: Vec<u32> = masks.iter().map(|w| w.count_ones()).collect();
    let max_deg = deg.iter().copied().max().unwrap_or(0);
    let top: u64 = (0..m).filter(|&u| deg[u] == max_deg).fold(0, |a, u| a | 1 << u);

    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
    let mut child = vec![0u64; m + 1];
    for s in 0u64..1 << m {
        // the vertex placed last canonically has maximum degree, and so must the new one
        let d = s.count_ones();
        if m > 0 && (d < max_deg || (d == max_deg && s & top != 0)) {
            continue;
        }
        for u in 0..m {
            child[u] = masks[u] | ((s >> u) & 1) << m;
        }
        child[m] = s;
        let g = Graph::from_masks(&child);
        if !admits(&g) {
            stats.pruned += 1;
            if let Some(r) = rejected.as_deref_mut() {
                r.push(g);
            }
            continue;
        }
        let lab = label_masks(&child);
        let w = lab.order[m];
        let accept = w == m || {
            let orb = orbits(m + 1, &lab.generators, &[]);
            orb[w] == orb[m] || {
                let keep: Vec<usize> = (0..=m).filter(|&u| u != w).collect();
                let without_w = g.induced_subgraph(&keep).expect("valid vertices");
                label_masks(without_w.masks().expect("small")).form == masks
            }
        };
        if accept {
            seen.insert(lab.form);
        }
    }
    stats.nodes_visited += seen.len() as u64;
    seen.into_iter().map(|f| Graph::from_masks(&f)).collect()
}

/// All admitted canonical graphs of order `depth`, sorted by graph6.
pub fn frontier(depth: usize, admits: &Admits<'_>, stats: &mut EnumerationStats) -> Vec<Graph> {
    let null = Graph::empty(0);
    if !admits(&null) {
        return vec![];
    }
    let mut level = vec![null];
    stats.nodes_visited += 1;
    for _ in 0..depth {
        level = level
            .iter()
            .flat_map(|p| augment(p, admits, stats))
            .collect();
    }
    level.sort_by_cached_key(graph6::encode);
    level
}

/// Depth-first walk below `root`, calling `visit` on every admitted class of order `n`.
pub fn walk(
    root: &Graph,
    n: usize,
    admits: &Admits<'_>,
    stats: &mut EnumerationStats,
    visit: &mut dyn FnMut(&Graph),
) {
    if root.n() == n {
        visit(root);
        return;
    }
    for child in augment(root, admits, stats) {
        walk(&child, n, admits, stats, visit);
    }
}

/// Streams one canonical representative of every admitted class on `n` vertices.
pub fn enumerate(
    n: usize,
    cap: usize,
    admits: &Admits<'_>,
    visit: &mut dyn FnMut(&Graph),
) -> Result<EnumerationStats> {
    check_order(n, cap)?;
    let mut stats = EnumerationStats::default();
    let null = Graph::empty(0);
    if admits(&null) {
        stats.nodes_visited += 1;
        walk(&null, n, admits, &mut stats, visit);
    }
    Ok(stats)
}

/// Streams the kF-free classes on `n` vertices.
pub fn enumerate_family_free(
    n: usize,
    spec: &ProblemSpec,
    cap: usize,
    visit: &mut dyn FnMut(&Graph),
) -> Result<EnumerationStats> {
    enumerate(n, cap, &|g: &Graph| is_family_free(g, spec), visit)
}

pub fn count_classes(n: usize, cap: usize, admits: &Admits<'_>) -> Result<u64> {
    let mut count = 0u64;
    enumerate(n, cap, admits, &mut |_| count += 1)?;
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::complete_graph;
    use crate::invariants::contains_subgraph;

    #[test]
    fn small_counts() {
        let all = |_: &Graph| true;
        let counts: Vec<u64> = (0..=6).map(|n| count_classes(n, 11, &all).unwrap()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156]);
    }

    #[test]
    fn triangle_free_on_three_vertices() {
        let k3 = complete_graph(3);
        let spec = ProblemSpec::new(k3.clone(), 1).unwrap();
        let mut seen = vec![];
        enumerate_family_free(3, &spec, 11, &mut |g| seen.push(g.edge_count())).unwrap();
        seen.sort_unstable();
        assert_eq!(seen, vec![0, 1, 2]);
        let free = |g: &Graph| !contains_subgraph(g, &k3);
        assert_eq!(count_classes(1, 11, &free).unwrap(), 1);
    }

    #[test]
    fn over_cap_is_a_capability_error() {
        let all = |_: &Graph| true;
        assert!(matches!(count_classes(12, 11, &all), Err(Error::Capability { .. })));
    }
}
