//! Simple undirected graphs stored as per-vertex neighbour bitsets.
//!
//! Rows are `words` 64-bit words wide, so graphs up to [`MAX_ORDER`] vertices
//! are representable. Loops and parallel edges cannot be expressed: every
//! mutation goes through [`Graph::set_edge`], which rejects `u == v` and
//! writes both directions.

use std::fmt;

use crate::error::{Error, Result};

/// Largest order any [`Graph`] may have.
pub const MAX_ORDER: usize = 512;

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

/// Iterator over the set bits of a multi-word bitset.
pub struct Bits<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl<'a> Bits<'a> {
    pub fn new(words: &'a [u64]) -> Self {
        Bits {
            words,
            index: 0,
            current: words.first().copied().unwrap_or(0),
        }
    }
}

impl Iterator for Bits<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let tz = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * 64 + tz);
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}

/// Iterator over the set bits of a single word.
#[inline]
pub fn bits64(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    ///
    /// Panics if `n > MAX_ORDER`; use [`Graph::try_empty`] for untrusted sizes.
    pub fn empty(n: usize) -> Self {
        Self::try_empty(n).expect("graph order exceeds MAX_ORDER")
    }

    pub fn try_empty(n: usize) -> Result<Self> {
        if n > MAX_ORDER {
            return Err(Error::capability(
                format!("graph of order {n}"),
                MAX_ORDER,
                "graphs are limited to MAX_ORDER vertices",
            ));
        }
        let words = words_for(n);
        Ok(Graph {
            n,
            words,
            rows: vec![0; n * words],
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::try_empty(n)?;
        for &(u, v) in edges {
            g.set_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph with at most 64 vertices from single-word neighbour masks.
    /// The masks must already be symmetric and loop-free.
    pub(crate) fn from_masks(masks: &[u64]) -> Self {
        debug_assert!(masks.len() <= 64);
        debug_assert!(masks
            .iter()
            .enumerate()
            .all(|(v, &m)| m & (1 << v) == 0 && bits64(m).all(|u| masks[u] & (1 << v) != 0)));
        Graph {
            n: masks.len(),
            words: 1,
            rows: masks.to_vec(),
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of 64-bit words per neighbourhood row.
    #[inline]
    pub fn words(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    /// Neighbourhood of `v` as a single word. Only valid when `n <= 64`.
    #[inline]
    pub fn mask(&self, v: usize) -> u64 {
        debug_assert_eq!(self.words, 1);
        self.rows[v]
    }

    /// All neighbourhoods as single words, or `None` when `n > 64`.
    pub fn masks(&self) -> Option<&[u64]> {
        (self.words == 1).then_some(&self.rows[..])
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    /// Adds the edge `uv` in place.
    pub fn set_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::Input(format!("loop at vertex {u}")));
        }
        let w = self.words;
        self.rows[u * w + v / 64] |= 1 << (v % 64);
        self.rows[v * w + u / 64] |= 1 << (u % 64);
        Ok(())
    }

    pub fn clear_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let w = self.words;
        self.rows[u * w + v / 64] &= !(1 << (v % 64));
        self.rows[v * w + u / 64] &= !(1 << (u % 64));
        Ok(())
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        let mut g = self.clone();
        g.set_edge(u, v)?;
        Ok(g)
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Result<Graph> {
        let mut g = self.clone();
        g.clear_edge(u, v)?;
        Ok(g)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> Bits<'_> {
        Bits::new(self.row(v))
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            out.extend(self.neighbors(u).filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    /// Number of neighbours of `v` inside `set`.
    pub fn degree_into(&self, v: usize, set: &[bool]) -> usize {
        self.neighbors(v).filter(|&u| set[u]).count()
    }

    /// `G[S]`: the subgraph induced by `vertices`, relabelled `0..|S|` in the given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph> {
        let mut position = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            self.check_vertex(v)?;
            if position[v] != usize::MAX {
                return Err(Error::Input(format!("vertex {v} listed twice")));
            }
            position[v] = i;
        }
        let mut g = Graph::empty(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            for u in self.neighbors(v) {
                let j = position[u];
                if j != usize::MAX && j > i {
                    g.set_edge(i, j)?;
                }
            }
        }
        Ok(g)
    }

    /// `G \ S`: deletes `vertices`, keeping the remaining ones in their original order.
    pub fn delete_vertices(&self, vertices: &[usize]) -> Result<Graph> {
        let mut removed = vec![false; self.n];
        for &v in vertices {
            self.check_vertex(v)?;
            removed[v] = true;
        }
        let keep: Vec<usize> = (0..self.n).filter(|&v| !removed[v]).collect();
        self.induced_subgraph(&keep)
    }

    /// Relabels so that new vertex `i` is old vertex `order[i]`.
    pub fn permuted(&self, order: &[usize]) -> Result<Graph> {
        if order.len() != self.n {
            return Err(Error::Input(format!(
                "permutation has length {} but graph has order {}",
                order.len(),
                self.n
            )));
        }
        self.induced_subgraph(order)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for u in self.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * self.n.saturating_sub(1) / 2
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

/// Ordered part sizes `(n_1, ..., n_r)` of a complete multipartite graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct PartSizes(Vec<usize>);

impl PartSizes {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if let Some(i) = sizes.iter().position(|&s| s == 0) {
            return Err(Error::Input(format!("part {i} has size 0")));
        }
        Ok(PartSizes(sizes))
    }

    /// Turán part sizes for `n` vertices in `r` parts, largest first.
    /// Parts that would be empty (`n < r`) are dropped.
    pub fn balanced(n: usize, r: usize) -> Self {
        assert!(r >= 1, "at least one part required");
        let (q, rem) = (n / r, n % r);
        let sizes = (0..r)
            .map(|i| if i < rem { q + 1 } else { q })
            .filter(|&s| s > 0)
            .collect();
        PartSizes(sizes)
    }

    pub fn sizes(&self) -> &[usize] {
        &self.0
    }

    pub fn parts(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Edge count of the complete multipartite graph with these parts.
    pub fn multipartite_edges(&self) -> usize {
        let t = self.total();
        (t * t - self.0.iter().map(|s| s * s).sum::<usize>()) / 2
    }
}

impl TryFrom<Vec<usize>> for PartSizes {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        PartSizes::new(v)
    }
}

impl From<PartSizes> for Vec<usize> {
    fn from(p: PartSizes) -> Self {
        p.0
    }
}

/// `K_r`. `r = 0` gives the null graph.
pub fn complete_graph(r: usize) -> Graph {
    let mut g = Graph::empty(r);
    for u in 0..r {
        for v in u + 1..r {
            g.set_edge(u, v).expect("in range");
        }
    }
    g
}

/// Complete multipartite graph; parts occupy consecutive label blocks in the given order.
pub fn complete_multipartite(sizes: &PartSizes) -> Graph {
    let mut g = Graph::empty(sizes.total());
    let mut part = Vec::with_capacity(g.n());
    for (i, &s) in sizes.sizes().iter().enumerate() {
        part.extend(std::iter::repeat_n(i, s));
    }
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if part[u] != part[v] {
                g.set_edge(u, v).expect("in range");
            }
        }
    }
    g
}

/// Turán graph `T_{n,r}` with parts largest-first.
pub fn turan_graph(n: usize, r: usize) -> Graph {
    complete_multipartite(&PartSizes::balanced(n, r))
}

/// `e(T_{n,r})` without building the graph.
pub fn turan_edges(n: usize, r: usize) -> usize {
    PartSizes::balanced(n, r).multipartite_edges()
}

/// `G ∨ H`: vertices of `g` first, then `h`, with every cross pair joined.
pub fn join(g: &Graph, h: &Graph) -> Graph {
    let mut out = disjoint_union(g, h);
    for u in 0..g.n() {
        for v in 0..h.n() {
            out.set_edge(u, g.n() + v).expect("in range");
        }
    }
    out
}

pub fn disjoint_union(g: &Graph, h: &Graph) -> Graph {
    let mut out = Graph::empty(g.n() + h.n());
    for (u, v) in g.edges() {
        out.set_edge(u, v).expect("in range");
    }
    for (u, v) in h.edges() {
        out.set_edge(g.n() + u, g.n() + v).expect("in range");
    }
    out
}

/// `kF`: `k` vertex-disjoint copies of `f`, copy `i` on labels `i*|F| .. (i+1)*|F|`.
pub fn disjoint_copies(f: &Graph, k: usize) -> Graph {
    let mut out = Graph::empty(f.n() * k);
    for i in 0..k {
        let off = i * f.n();
        for (u, v) in f.edges() {
            out.set_edge(off + u, off + v).expect("in range");
        }
    }
    out
}

pub fn cycle_graph(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    if n >= 3 {
        for v in 0..n {
            g.set_edge(v, (v + 1) % n).expect("in range");
        }
    }
    g
}

pub fn path_graph(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for v in 1..n {
        g.set_edge(v - 1, v).expect("in range");
    }
    g
}

pub fn star_graph(leaves: usize) -> Graph {
    join(&complete_graph(1), &Graph::empty(leaves))
}

pub fn petersen_graph() -> Graph {
    let mut g = Graph::empty(10);
    for i in 0..5 {
        g.set_edge(i, (i + 1) % 5).expect("in range");
        g.set_edge(5 + i, 5 + (i + 2) % 5).expect("in range");
        g.set_edge(i, 5 + i).expect("in range");
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_edges() {
        assert_eq!(complete_graph(0).n(), 0);
        assert_eq!(complete_graph(1).n(), 1);
        assert_eq!(complete_graph(1).edge_count(), 0);
        assert_eq!(complete_graph(3).edge_count(), 3);
        assert_eq!(complete_graph(6).edge_count(), 15);
    }

    #[test]
    fn turan_examples() {
        let t = turan_graph(6, 2);
        assert_eq!(t.edge_count(), 9);
        assert!(t.degrees().iter().all(|&d| d == 3));
        assert_eq!(PartSizes::balanced(7, 3).sizes(), &[3, 2, 2]);
        assert_eq!(turan_graph(7, 3).edge_count(), 16);
        assert_eq!(turan_graph(5, 1).edge_count(), 0);
        assert_eq!(turan_graph(5, 1).n(), 5);
        assert_eq!(turan_edges(7, 3), 16);
        // n < r keeps the singleton parts only
        assert_eq!(turan_graph(2, 5), complete_graph(2));
    }

    #[test]
    fn joins() {
        let g = join(&complete_graph(1), &turan_graph(6, 2));
        assert_eq!((g.n(), g.edge_count()), (7, 15));
        let star = join(&complete_graph(1), &Graph::empty(4));
        assert_eq!(star, star_graph(4));
        assert_eq!(star.degrees(), vec![4, 1, 1, 1, 1]);
        assert_eq!(join(&complete_graph(2), &complete_graph(2)), complete_graph(4));
    }

    #[test]
    fn copies() {
        let g = disjoint_copies(&complete_graph(3), 2);
        assert_eq!((g.n(), g.edge_count(), g.components().len()), (6, 6, 2));
        assert_eq!(disjoint_copies(&complete_graph(3), 1), complete_graph(3));
        let p = disjoint_copies(&path_graph(3), 3);
        assert_eq!((p.n(), p.edge_count()), (9, 6));
    }

    #[test]
    fn multipartite() {
        let s = |v: Vec<usize>| PartSizes::new(v).unwrap();
        assert_eq!(complete_multipartite(&s(vec![3, 3])), turan_graph(6, 2));
        assert_eq!(complete_multipartite(&s(vec![1, 1, 1])), complete_graph(3));
        assert_eq!(complete_multipartite(&s(vec![3, 2, 2])), turan_graph(7, 3));
        assert!(PartSizes::new(vec![2, 0]).is_err());
    }

    #[test]
    fn subgraphs() {
        let k4 = complete_graph(4);
        assert_eq!(k4.induced_subgraph(&[]).unwrap().n(), 0);
        assert_eq!(k4.delete_vertices(&[2]).unwrap(), complete_graph(3));
        let t = turan_graph(6, 2);
        let rest = t.delete_vertices(&[0, 1, 2]).unwrap();
        assert_eq!((rest.n(), rest.edge_count()), (3, 0));
        assert!(matches!(
            k4.delete_vertices(&[4]),
            Err(Error::VertexOutOfRange { vertex: 4, n: 4 })
        ));
        assert!(k4.with_edge(0, 0).is_err());
        assert_eq!(k4.without_edge(0, 1).unwrap().edge_count(), 5);
    }

    #[test]
    fn wide_rows() {
        let g = turan_graph(200, 2);
        assert_eq!(g.words(), 4);
        assert_eq!(g.edge_count(), 10_000);
        assert!(g.has_edge(0, 199));
        assert!(!g.has_edge(0, 99));
        assert!(Graph::try_empty(MAX_ORDER + 1).is_err());
    }

    #[test]
    fn petersen_is_cubic() {
        let p = petersen_graph();
        assert_eq!(p.edge_count(), 15);
        assert!(p.degrees().iter().all(|&d| d == 3));
    }

    #[test]
    fn turan_edge_sandwich() {
        for r in 1..=10usize {
            for n in 0..=200usize {
                let e = turan_edges(n, r) as f64;
                let top = (1.0 - 1.0 / r as f64) * (n * n) as f64 / 2.0;
                assert!(e <= top + 1e-9 && e >= top - r as f64 / 8.0 - 1e-9, "n={n} r={r}");
            }
        }
    }
}
