//! Vertex partitions into `r` parts: max-crossing partitions and edit distance
//! to the Turán graph.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{turan_edges, Graph};

/// Largest `r^n` the exact partition searches will accept.
pub const EXACT_SEARCH_LIMIT: f64 = 1e8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Local,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionAssignment {
    pub part_of: Vec<usize>,
    pub r: usize,
}

impl PartitionAssignment {
    pub fn new(part_of: Vec<usize>, r: usize) -> Result<Self> {
        if let Some(&p) = part_of.iter().find(|&&p| p >= r) {
            return Err(Error::Input(format!("part index {p} not below r = {r}")));
        }
        Ok(PartitionAssignment { part_of, r })
    }

    pub fn part_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.r];
        for &p in &self.part_of {
            sizes[p] += 1;
        }
        sizes
    }

    /// `d_{U_i}(v)` for the part `U_i` containing `v`.
    pub fn internal_degree(&self, g: &Graph, v: usize) -> usize {
        g.neighbors(v)
            .filter(|&u| self.part_of[u] == self.part_of[v])
            .count()
    }

    pub fn internal_edges(&self, g: &Graph) -> usize {
        (0..g.n()).map(|v| self.internal_degree(g, v)).sum::<usize>() / 2
    }

    /// `Σ_{i<j} e(U_i, U_j)`.
    pub fn crossing_edges(&self, g: &Graph) -> usize {
        g.edge_count() - self.internal_edges(g)
    }
}

fn check_exact(n: usize, r: usize) -> Result<()> {
    if (r as f64).powi(n as i32) > EXACT_SEARCH_LIMIT {
        return Err(Error::capability(
            format!("exact {r}-partition search on {n} vertices"),
            EXACT_SEARCH_LIMIT as usize,
            "use local mode",
        ));
    }
    Ok(())
}

/// A partition maximising the number of crossing edges.
///
/// Exact mode returns the lexicographically smallest maximising `part_of`
/// vector. Local mode returns a partition in which no single-vertex move
/// increases the crossing count.
pub fn max_crossing_partition(g: &Graph, r: usize, mode: Mode) -> Result<PartitionAssignment> {
    if r == 0 {
        return Err(Error::Input("r must be positive".into()));
    }
    let local = local_max_cut(g, r);
    match mode {
        Mode::Local => Ok(local),
        Mode::Exact => {
            check_exact(g.n(), r)?;
            let adj = lower_neighbours(g);
            let bound = local.internal_edges(g) + 1;
            let mut s = ExactCut {
                adj: &adj,
                r,
                caps: None,
                best: bound,
                best_assign: local.part_of.clone(),
                cur: vec![0; g.n()],
                sizes: vec![0; r],
            };
            s.search(0, 0, 0);
            Ok(PartitionAssignment {
                part_of: s.best_assign,
                r,
            })
        }
    }
}

fn lower_neighbours(g: &Graph) -> Vec<Vec<usize>> {
    (0..g.n())
        .map(|v| g.neighbors(v).filter(|&u| u < v).collect())
        .collect()
}

struct ExactCut<'a> {
    adj: &'a [Vec<usize>],
    r: usize,
    /// Part capacities for balanced searches; `None` means unrestricted.
    caps: Option<Vec<usize>>,
    best: usize,
    best_assign: Vec<usize>,
    cur: Vec<usize>,
    sizes: Vec<usize>,
}

impl ExactCut<'_> {
    /// Depth-first over assignments in lexicographic order; only strict
    /// improvements replace the incumbent, so the first optimum found is the
    /// lexicographically smallest one.
    fn search(&mut self, v: usize, internal: usize, opened: usize) {
        if internal >= self.best {
            return;
        }
        if v == self.adj.len() {
            self.best = internal;
            self.best_assign = self.cur.clone();
            return;
        }
        // unrestricted parts are interchangeable: restrict to restricted-growth strings
        let limit = match self.caps {
            None => (opened + 1).min(self.r),
            Some(_) => self.r,
        };
        for p in 0..limit {
            if let Some(caps) = &self.caps {
                if self.sizes[p] >= caps[p] {
                    continue;
                }
            }
            let add = self.adj[v].iter().filter(|&&u| self.cur[u] == p).count();
            self.cur[v] = p;
            self.sizes[p] += 1;
            self.search(v + 1, internal + add, opened.max(p + 1));
            self.sizes[p] -= 1;
        }
    }
}

fn local_max_cut(g: &Graph, r: usize) -> PartitionAssignment {
    let n = g.n();
    let mut part = vec![0usize; n];
    for v in 0..n {
        let mut count = vec![0usize; r];
        for u in g.neighbors(v).filter(|&u| u < v) {
            count[part[u]] += 1;
        }
        part[v] = argmin(&count);
    }
    loop {
        let mut moved = false;
        for v in 0..n {
            let mut count = vec![0usize; r];
            for u in g.neighbors(v) {
                count[part[u]] += 1;
            }
            let target = argmin(&count);
            if count[target] < count[part[v]] {
                part[v] = target;
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }
    PartitionAssignment { part_of: part, r }
}

fn argmin(xs: &[usize]) -> usize {
    (0..xs.len()).min_by_key(|&i| (xs[i], i)).unwrap_or(0)
}

/// Minimum number of edge edits turning `g` into `T_{n,r}`, with a witness
/// balanced partition. For a balanced partition with `I` internal edges the
/// cost is `I + (e(T_{n,r}) - (e(G) - I))`.
pub fn edit_distance_to_turan(g: &Graph, r: usize, mode: Mode) -> Result<(usize, PartitionAssignment)> {
    if r == 0 {
        return Err(Error::Input("r must be positive".into()));
    }
    let n = g.n();
    let caps: Vec<usize> = (0..r).map(|i| n / r + usize::from(i < n % r)).collect();
    let cost = |internal: usize| 2 * internal + turan_edges(n, r) - g.edge_count();
    let local = local_balanced(g, r, &caps);
    let witness = match mode {
        Mode::Local => local,
        Mode::Exact => {
            check_exact(n, r)?;
            let adj = lower_neighbours(g);
            let mut s = ExactCut {
                adj: &adj,
                r,
                caps: Some(caps),
                best: local.internal_edges(g) + 1,
                best_assign: local.part_of.clone(),
                cur: vec![0; n],
                sizes: vec![0; r],
            };
            s.search(0, 0, 0);
            PartitionAssignment {
                part_of: s.best_assign,
                r,
            }
        }
    };
    Ok((cost(witness.internal_edges(g)), witness))
}

/// Balanced start plus improving swaps between parts.
fn local_balanced(g: &Graph, r: usize, caps: &[usize]) -> PartitionAssignment {
    let n = g.n();
    let mut part = Vec::with_capacity(n);
    for (p, &c) in caps.iter().enumerate() {
        part.extend(std::iter::repeat_n(p, c));
    }
    let same = |part: &[usize], v: usize, p: usize, skip: usize| {
        g.neighbors(v).filter(|&u| u != skip && part[u] == p).count() as isize
    };
    loop {
        let mut improved = false;
        for u in 0..n {
            for v in u + 1..n {
                let (pu, pv) = (part[u], part[v]);
                if pu == pv {
                    continue;
                }
                let delta = same(&part, u, pv, v) + same(&part, v, pu, u)
                    - same(&part, u, pu, v)
                    - same(&part, v, pv, u);
                if delta < 0 {
                    part.swap(u, v);
                    improved = true;
                }
            }
        }
        if !improved {
            break;
        }
    }
    PartitionAssignment { part_of: part, r }
}
