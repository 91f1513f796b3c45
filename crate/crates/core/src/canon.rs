//! Canonical labelling for graphs with at most 64 vertices.
//!
//! Equitable partition refinement followed by individualisation of the first
//! non-singleton cell. Every leaf of the search tree yields a relabelled
//! adjacency matrix; the lexicographically largest one is the canonical form.
//! Branches are pruned with automorphisms already known to fix the current
//! individualisation sequence pointwise: twin transpositions (seeded up front)
//! and automorphisms discovered from equal leaves.

use crate::graph::{bits64, Graph};

#[derive(Clone, Debug)]
pub struct Labeling {
    /// `order[p]` is the original vertex placed at canonical position `p`.
    pub order: Vec<usize>,
    /// Neighbourhood masks of the canonically relabelled graph.
    pub form: Vec<u64>,
    /// Automorphisms found during the search, as vertex maps.
    pub generators: Vec<Vec<usize>>,
}

impl Labeling {
    /// Orbit representative (smallest member) of every vertex under the found generators.
    pub fn orbits(&self) -> Vec<usize> {
        orbits(self.order.len(), &self.generators, &[])
    }

    pub fn graph(&self) -> Graph {
        Graph::from_masks(&self.form)
    }
}

/// Canonical labelling of `g`. Panics if `g.n() > 64`.
pub fn canonical_labeling(g: &Graph) -> Labeling {
    let masks = g.masks().expect("canonical labelling supports at most 64 vertices");
    label_masks(masks)
}

/// The canonical representative of the isomorphism class of `g`.
pub fn canonical_form(g: &Graph) -> Graph {
    canonical_labeling(g).graph()
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n()
        && a.edge_count() == b.edge_count()
        && canonical_labeling(a).form == canonical_labeling(b).form
}

pub(crate) fn label_masks(adj: &[u64]) -> Labeling {
    let n = adj.len();
    if n == 0 {
        return Labeling {
            order: vec![],
            form: vec![],
            generators: vec![],
        };
    }
    let mut search = Search {
        adj,
        best: None,
        generators: twin_transpositions(adj),
    };
    let mut seq = Vec::new();
    search.visit(vec![(0..n).collect()], &mut seq);
    let (form, order) = search.best.expect("search reaches at least one leaf");
    Labeling {
        order,
        form,
        generators: search.generators,
    }
}

struct Search<'a> {
    adj: &'a [u64],
    best: Option<(Vec<u64>, Vec<usize>)>,
    generators: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn visit(&mut self, mut cells: Vec<Vec<usize>>, seq: &mut Vec<usize>) {
        refine(self.adj, &mut cells);
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            self.leaf(&cells);
            return;
        };
        let cell = cells[target].clone();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &cell {
            if !explored.is_empty() {
                let orb = orbits(self.adj.len(), &self.generators, seq);
                if explored.iter().any(|&u| orb[u] == orb[v]) {
                    continue;
                }
            }
            explored.push(v);
            let mut next = Vec::with_capacity(cells.len() + 1);
            next.extend_from_slice(&cells[..target]);
            next.push(vec![v]);
            next.push(cell.iter().copied().filter(|&u| u != v).collect());
            next.extend_from_slice(&cells[target + 1..]);
            seq.push(v);
            self.visit(next, seq);
            seq.pop();
        }
    }

    fn leaf(&mut self, cells: &[Vec<usize>]) {
        let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let mut pos = vec![0usize; order.len()];
        for (p, &v) in order.iter().enumerate() {
            pos[v] = p;
        }
        let cert: Vec<u64> = order
            .iter()
            .map(|&v| bits64(self.adj[v]).fold(0u64, |acc, u| acc | 1 << pos[u]))
            .collect();
        match &self.best {
            Some((best, _)) if cert < *best => {}
            Some((best, best_order)) if cert == *best => {
                let mut gamma = vec![0usize; order.len()];
                for (p, &v) in best_order.iter().enumerate() {
                    gamma[v] = order[p];
                }
                if gamma.iter().enumerate().any(|(i, &g)| i != g) {
                    self.generators.push(gamma);
                }
            }
            _ => self.best = Some((cert, order)),
        }
    }
}

/// Refines an ordered partition until it is equitable. Fragments of a split
/// cell replace it in place, ordered by ascending neighbour count.
pub(crate) fn refine(adj: &[u64], cells: &mut Vec<Vec<usize>>) {
    loop {
        let mut changed = false;
        let mut si = 0;
        while si < cells.len() {
            let splitter = cells[si].iter().fold(0u64, |m, &v| m | 1 << v);
            let mut next = Vec::with_capacity(cells.len());
            for cell in cells.drain(..) {
                if cell.len() == 1 {
                    next.push(cell);
                    continue;
                }
                let mut keyed: Vec<(u32, usize)> = cell
                    .iter()
                    .map(|&v| ((adj[v] & splitter).count_ones(), v))
                    .collect();
                keyed.sort_by_key(|&(c, _)| c);
                if keyed[0].0 == keyed[keyed.len() - 1].0 {
                    next.push(cell);
                    continue;
                }
                changed = true;
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        next.push(keyed[start..i].iter().map(|&(_, v)| v).collect());
                        start = i;
                    }
                }
            }
            *cells = next;
            si += 1;
        }
        if !changed {
            break;
        }
    }
}

fn twin_transpositions(adj: &[u64]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut gens = Vec::new();
    let mut assigned = vec![false; n];
    for u in 0..n {
        if assigned[u] {
            continue;
        }
        for v in u + 1..n {
            if assigned[v] {
                continue;
            }
            let open = adj[u] & !(1 << v) == adj[v] & !(1 << u);
            if open {
                assigned[v] = true;
                let mut t: Vec<usize> = (0..n).collect();
                t.swap(u, v);
                gens.push(t);
            }
        }
    }
    gens
}

/// Orbit representatives under the generators that fix every vertex of `fixed`.
pub(crate) fn orbits(n: usize, generators: &[Vec<usize>], fixed: &[usize]) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for g in generators {
        if fixed.iter().any(|&v| g[v] != v) {
            continue;
        }
        for (v, &w) in g.iter().enumerate() {
            let (a, b) = (find(&mut parent, v), find(&mut parent, w));
            if a != b {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi] = lo;
            }
        }
    }
    (0..n).map(|v| find(&mut parent, v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph, disjoint_copies, path_graph, petersen_graph, turan_graph};

    fn relabel(g: &Graph, seed: u64) -> Graph {
        let mut order: Vec<usize> = (0..g.n()).collect();
        let mut s = seed;
        for i in (1..order.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (s >> 33) as usize % (i + 1));
        }
        g.permuted(&order).unwrap()
    }

    #[test]
    fn invariant_under_relabelling() {
        let graphs = [
            petersen_graph(),
            cycle_graph(7),
            path_graph(6),
            turan_graph(9, 3),
            disjoint_copies(&complete_graph(3), 3),
            Graph::empty(11),
            Graph::from_edges(8, &[(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4), (0, 4)]).unwrap(),
        ];
        for g in &graphs {
            let c = canonical_form(g);
            for seed in 0..20 {
                assert_eq!(canonical_form(&relabel(g, seed)), c);
            }
            assert!(crate::canon::is_isomorphic(g, &c));
        }
    }

    #[test]
    fn distinguishes_cospectral_like_pairs() {
        // C6 and 2 C3 are both 2-regular on six vertices
        assert!(!is_isomorphic(&cycle_graph(6), &disjoint_copies(&cycle_graph(3), 2)));
        // the two 3-regular graphs on 6 vertices
        let prism = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]).unwrap();
        assert!(!is_isomorphic(&prism, &turan_graph(6, 2)));
    }

    #[test]
    fn petersen_orbits_are_transitive() {
        let lab = canonical_labeling(&petersen_graph());
        assert!(lab.orbits().iter().all(|&o| o == 0));
        for g in &lab.generators {
            let p = petersen_graph();
            for (u, v) in p.edges() {
                assert!(p.has_edge(g[u], g[v]));
            }
        }
    }

    #[test]
    fn order_is_a_permutation() {
        let lab = canonical_labeling(&petersen_graph());
        let mut o = lab.order.clone();
        o.sort_unstable();
        assert_eq!(o, (0..10).collect::<Vec<_>>());
        assert_eq!(petersen_graph().permuted(&lab.order).unwrap(), lab.graph());
    }
}
