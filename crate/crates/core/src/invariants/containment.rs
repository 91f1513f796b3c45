//! Subgraph containment (not necessarily induced) and disjoint-copy packing.

use std::ops::ControlFlow;

use crate::graph::{Bits, Graph};

/// Search order for the pattern: highest degree first, then repeatedly the
/// vertex with most already-placed neighbours (ties by degree, then label).
struct Plan {
    order: Vec<usize>,
    /// For each depth, the depths of earlier pattern vertices adjacent to it.
    back: Vec<Vec<usize>>,
    degree: Vec<usize>,
}

impl Plan {
    fn new(f: &Graph) -> Self {
        let n = f.n();
        let deg = f.degrees();
        let mut placed = vec![false; n];
        let mut depth_of = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        let mut back = Vec::with_capacity(n);
        for d in 0..n {
            let next = (0..n)
                .filter(|&v| !placed[v])
                .max_by_key(|&v| {
                    let links = f.neighbors(v).filter(|&u| placed[u]).count();
                    (links, deg[v], std::cmp::Reverse(v))
                })
                .expect("unplaced vertex remains");
            placed[next] = true;
            depth_of[next] = d;
            back.push(
                f.neighbors(next)
                    .filter(|&u| depth_of[u] < d)
                    .map(|u| depth_of[u])
                    .collect(),
            );
            order.push(next);
        }
        let degree = order.iter().map(|&v| deg[v]).collect();
        Plan {
            order,
            back,
            degree,
        }
    }
}

/// Calls `visit` with every injective edge-preserving map `F -> G`, indexed by
/// pattern vertex. Stops early when `visit` breaks.
pub fn for_each_embedding<B>(
    g: &Graph,
    f: &Graph,
    mut visit: impl FnMut(&[usize]) -> ControlFlow<B>,
) -> Option<B> {
    if f.n() > g.n() {
        return None;
    }
    let plan = Plan::new(f);
    let words = g.words();
    let g_deg = g.degrees();
    let mut image = vec![0usize; f.n()];
    let mut used = vec![0u64; words];
    let mut scratch = vec![0u64; words * f.n().max(1)];
    let mut map = vec![0usize; f.n()];
    embed(
        g,
        &plan,
        &g_deg,
        0,
        &mut image,
        &mut used,
        &mut scratch,
        &mut map,
        &mut visit,
    )
    .break_value()
}

#[allow(clippy::too_many_arguments)]
fn embed<B>(
    g: &Graph,
    plan: &Plan,
    g_deg: &[usize],
    depth: usize,
    image: &mut [usize],
    used: &mut [u64],
    scratch: &mut [u64],
    map: &mut [usize],
    visit: &mut impl FnMut(&[usize]) -> ControlFlow<B>,
) -> ControlFlow<B> {
    if depth == plan.order.len() {
        for (d, &fv) in plan.order.iter().enumerate() {
            map[fv] = image[d];
        }
        return visit(map);
    }
    let words = g.words();
    let (cand, rest) = scratch.split_at_mut(words);
    match plan.back[depth].first() {
        Some(&first) => {
            cand.copy_from_slice(g.row(image[first]));
            for &d in &plan.back[depth][1..] {
                for (c, r) in cand.iter_mut().zip(g.row(image[d])) {
                    *c &= r;
                }
            }
        }
        None => {
            cand.fill(0);
            for v in 0..g.n() {
                cand[v / 64] |= 1 << (v % 64);
            }
        }
    }
    for (c, u) in cand.iter_mut().zip(used.iter()) {
        *c &= !u;
    }
    let candidates: Vec<usize> = Bits::new(cand).collect();
    for w in candidates {
        if g_deg[w] < plan.degree[depth] {
            continue;
        }
        image[depth] = w;
        used[w / 64] |= 1 << (w % 64);
        let flow = embed(g, plan, g_deg, depth + 1, image, used, rest, map, visit);
        used[w / 64] &= !(1 << (w % 64));
        flow?;
    }
    ControlFlow::Continue(())
}

/// A witness embedding of `f` into `g` (indexed by vertex of `f`), if one exists.
pub fn find_embedding(g: &Graph, f: &Graph) -> Option<Vec<usize>> {
    for_each_embedding(g, f, |m| ControlFlow::Break(m.to_vec()))
}

pub fn contains_subgraph(g: &Graph, f: &Graph) -> bool {
    find_embedding(g, f).is_some()
}

/// Distinct vertex sets of `g` that carry at least one copy of `f`, as
/// bitsets of `g.words()` words each, sorted.
pub fn copy_vertex_sets(g: &Graph, f: &Graph) -> Vec<Vec<u64>> {
    let mut sets = std::collections::BTreeSet::new();
    for_each_embedding::<()>(g, f, |m| {
        let mut s = vec![0u64; g.words()];
        for &v in m {
            s[v / 64] |= 1 << (v % 64);
        }
        sets.insert(s);
        ControlFlow::Continue(())
    });
    sets.into_iter().collect()
}

/// `min(cap, ν_F(G))` where `ν_F(G)` is the maximum number of pairwise
/// vertex-disjoint copies of `f` in `g`.
pub fn max_disjoint_copies(g: &Graph, f: &Graph, cap: usize) -> usize {
    if cap == 0 {
        return 0;
    }
    if f.n() == 0 {
        return cap;
    }
    let copies = copy_vertex_sets(g, f);
    if copies.is_empty() {
        return 0;
    }
    let mut packer = Packer {
        words: g.words(),
        copy_order: f.n(),
        cap,
        best: 1,
        copies,
    };
    if packer.best < cap {
        let all: Vec<usize> = (0..packer.copies.len()).collect();
        packer.search(&all, 0);
    }
    packer.best.min(cap)
}

struct Packer {
    words: usize,
    copy_order: usize,
    cap: usize,
    best: usize,
    copies: Vec<Vec<u64>>,
}

impl Packer {
    fn disjoint(a: &[u64], b: &[u64]) -> bool {
        a.iter().zip(b).all(|(x, y)| x & y == 0)
    }

    fn upper_bound(&self, avail: &[usize]) -> usize {
        if avail.is_empty() {
            return 0;
        }
        let mut union = vec![0u64; self.words];
        let mut common = vec![u64::MAX; self.words];
        for &c in avail {
            for (i, w) in self.copies[c].iter().enumerate() {
                union[i] |= w;
                common[i] &= w;
            }
        }
        if common.iter().any(|&w| w != 0) {
            return 1;
        }
        let covered: usize = union.iter().map(|w| w.count_ones() as usize).sum();
        covered / self.copy_order
    }

    fn search(&mut self, avail: &[usize], count: usize) {
        if self.best >= self.cap {
            return;
        }
        if avail.is_empty() {
            self.best = self.best.max(count);
            return;
        }
        if count + self.upper_bound(avail) <= self.best {
            return;
        }
        // branch on the covered vertex lying in the fewest available copies
        let mut tally = vec![0usize; self.words * 64];
        for &c in avail {
            for v in Bits::new(&self.copies[c]) {
                tally[v] += 1;
            }
        }
        let pivot = (0..tally.len())
            .filter(|&v| tally[v] > 0)
            .min_by_key(|&v| tally[v])
            .expect("available copies cover some vertex");
        let (pw, pb) = (pivot / 64, 1u64 << (pivot % 64));
        let (with, without): (Vec<usize>, Vec<usize>) =
            avail.iter().partition(|&&c| self.copies[c][pw] & pb != 0);
        for &c in &with {
            let rest: Vec<usize> = without
                .iter()
                .copied()
                .filter(|&d| Self::disjoint(&self.copies[c], &self.copies[d]))
                .collect();
            self.best = self.best.max(count + 1);
            self.search(&rest, count + 1);
            if self.best >= self.cap {
                return;
            }
        }
        self.search(&without, count);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph, join, petersen_graph, turan_graph};

    #[test]
    fn containment_examples() {
        assert!(contains_subgraph(&complete_graph(4), &complete_graph(3)));
        assert!(!contains_subgraph(&turan_graph(6, 2), &complete_graph(3)));
        let g = join(&complete_graph(1), &turan_graph(6, 2));
        let w = find_embedding(&g, &complete_graph(3)).unwrap();
        assert!(w.contains(&0));
        for (a, b) in complete_graph(3).edges() {
            assert!(g.has_edge(w[a], w[b]));
        }
        assert!(contains_subgraph(&petersen_graph(), &cycle_graph(5)));
        assert!(!contains_subgraph(&petersen_graph(), &cycle_graph(4)));
        assert!(!contains_subgraph(&complete_graph(2), &complete_graph(3)));
    }

    #[test]
    fn packing_examples() {
        let k3 = complete_graph(3);
        assert_eq!(max_disjoint_copies(&complete_graph(6), &k3, 3), 2);
        assert_eq!(max_disjoint_copies(&turan_graph(6, 2), &k3, 1), 0);
        let hub = join(&complete_graph(1), &turan_graph(8, 2));
        assert_eq!(max_disjoint_copies(&hub, &k3, 2), 1);
        assert_eq!(max_disjoint_copies(&complete_graph(9), &k3, 5), 3);
        assert_eq!(max_disjoint_copies(&complete_graph(9), &k3, 2), 2);
        assert_eq!(max_disjoint_copies(&complete_graph(9), &k3, 0), 0);
    }

    #[test]
    fn packing_on_wide_graph() {
        let hub = join(&complete_graph(1), &turan_graph(99, 2));
        assert_eq!(max_disjoint_copies(&hub, &complete_graph(3), 2), 1);
        let two = join(&complete_graph(2), &turan_graph(70, 2));
        assert_eq!(max_disjoint_copies(&two, &complete_graph(3), 3), 2);
    }
}
