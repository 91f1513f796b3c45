//! Exact `ex(n, kF)`, `EX(n, kF)` and `EX_sp(n, kF)` by exhaustive search.
//!
//! The augmentation tree is cut at a fixed depth; each canonical graph at that
//! depth roots an independent task. Tasks always start from an empty partial
//! result and are merged in task order, so serial, parallel and resumed runs
//! produce identical catalogs.

use std::cmp::Ordering;
use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6;
use crate::invariants::problem::FamilyDescriptor;
use crate::invariants::{is_family_free, ProblemSpec};
use crate::search::catalog::{
    CatalogKind, CatalogValue, ExtremalCatalog, RhoCertificate, SearchStats, SCHEMA_VERSION,
};
use crate::search::enumerate::{check_order, frontier, walk, EnumerationStats, DEFAULT_ORDER_CAP};
use crate::spectral::spectral_radius;

pub const DEFAULT_TOL: f64 = 1e-10;
/// Tightest tolerance tried when separating overlapping spectral intervals.
pub const TIGHTEST_TOL: f64 = 1e-14;
const DEFAULT_SPLIT_DEPTH: usize = 6;
const CHECKPOINT_VERSION: u32 = 1;

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub order_cap: usize,
    /// Depth at which the tree is split into tasks; defaults to `min(n, 6)`.
    pub split_depth: Option<usize>,
    pub parallel: bool,
    pub tol: f64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            order_cap: DEFAULT_ORDER_CAP,
            split_depth: None,
            parallel: true,
            tol: DEFAULT_TOL,
        }
    }
}

impl SearchOptions {
    pub fn serial() -> Self {
        SearchOptions {
            parallel: false,
            ..Default::default()
        }
    }

    fn depth_for(&self, n: usize) -> usize {
        self.split_depth.unwrap_or(DEFAULT_SPLIT_DEPTH).min(n)
    }
}

/// Running result of a search; merging is associative and commutative.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PartialCatalog {
    pub best_edges: Option<u64>,
    /// Edge searches: graph6 of classes attaining `best_edges`.
    pub edge_graphs: Vec<String>,
    /// Spectral searches: classes whose interval reaches the best lower bound.
    pub spectral: Vec<RhoCertificate>,
    pub runner_up: Option<RhoCertificate>,
    pub stats: SearchStats,
}

fn rank(a: &RhoCertificate, b: &RhoCertificate) -> Ordering {
    a.rho
        .total_cmp(&b.rho)
        .then_with(|| b.graph6.cmp(&a.graph6))
}

/// Largest possible spectral radius given edge count and maximum degree.
fn rho_ceiling(g: &Graph) -> f64 {
    let m = g.edge_count() as f64;
    let stanley = (-1.0 + (1.0 + 8.0 * m).sqrt()) / 2.0;
    stanley.min(g.max_degree() as f64)
}

impl PartialCatalog {
    fn offer_edge(&mut self, g: &Graph) {
        let e = g.edge_count() as u64;
        match self.best_edges {
            Some(b) if e < b => {}
            Some(b) if e == b => self.edge_graphs.push(graph6::encode(g)),
            _ => {
                self.best_edges = Some(e);
                self.edge_graphs = vec![graph6::encode(g)];
            }
        }
    }

    fn offer_spectral(&mut self, g: &Graph, tol: f64) -> Result<()> {
        if let Some(ru) = &self.runner_up {
            if rho_ceiling(g) + 1e-9 < ru.rho {
                return Ok(());
            }
        }
        let res = spectral_radius(g, tol)?;
        self.stats.spectral_evaluations += 1;
        self.spectral.push(RhoCertificate {
            graph6: graph6::encode(g),
            edges: g.edge_count() as u64,
            rho: res.rho,
            residual: res.residual,
        });
        self.normalize();
        Ok(())
    }

    /// Keeps the classes overlapping the best lower bound plus the best of the rest.
    fn normalize(&mut self) {
        let Some(floor) = self
            .spectral
            .iter()
            .map(RhoCertificate::lower)
            .max_by(f64::total_cmp)
        else {
            return;
        };
        let (mut keep, out): (Vec<_>, Vec<_>) = std::mem::take(&mut self.spectral)
            .into_iter()
            .partition(|c| c.upper() >= floor);
        self.runner_up = out
            .into_iter()
            .chain(self.runner_up.take())
            .max_by(rank);
        keep.sort_by(|a, b| a.graph6.cmp(&b.graph6));
        keep.dedup_by(|a, b| a.graph6 == b.graph6);
        self.spectral = keep;
    }

    pub fn merge(mut self, other: PartialCatalog) -> PartialCatalog {
        match (self.best_edges, other.best_edges) {
            (_, None) => {}
            (None, Some(_)) => {
                self.best_edges = other.best_edges;
                self.edge_graphs = other.edge_graphs;
            }
            (Some(a), Some(b)) => match a.cmp(&b) {
                Ordering::Less => {
                    self.best_edges = Some(b);
                    self.edge_graphs = other.edge_graphs;
                }
                Ordering::Equal => self.edge_graphs.extend(other.edge_graphs),
                Ordering::Greater => {}
            },
        }
        self.edge_graphs.sort();
        self.edge_graphs.dedup();
        self.spectral.extend(other.spectral);
        self.runner_up = self.runner_up.into_iter().chain(other.runner_up).max_by(rank);
        self.normalize();
        self.stats.nodes_visited += other.stats.nodes_visited;
        self.stats.pruned += other.stats.pruned;
        self.stats.spectral_evaluations += other.stats.spectral_evaluations;
        self
    }
}

/// Persisted progress of an interrupted search.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchCheckpoint {
    pub version: u32,
    pub n: usize,
    pub family: FamilyDescriptor,
    pub kind: CatalogKind,
    pub tol: f64,
    pub split_depth: usize,
    /// Task roots already processed; always a prefix of the task list.
    pub completed_roots: Vec<String>,
    pub partial: PartialCatalog,
}

impl SearchCheckpoint {
    pub fn write(&self, path: &std::path::Path) -> Result<()> {
        std::fs::write(path, serde_json::to_string_pretty(self)? + "\n")?;
        Ok(())
    }

    pub fn read(path: &std::path::Path) -> Result<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }
}

#[derive(Clone, Debug, Default)]
pub struct SearchControl {
    pub resume: Option<SearchCheckpoint>,
    /// Return a checkpoint once this many further tasks have completed.
    pub stop_after_tasks: Option<usize>,
    /// Rewritten after every batch of tasks.
    pub checkpoint_path: Option<PathBuf>,
}

#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum SearchOutcome {
    Complete(ExtremalCatalog),
    Interrupted(SearchCheckpoint),
}

/// `ex(n, kF)` and every extremal class.
pub fn edge_extremal(n: usize, spec: &ProblemSpec, opts: &SearchOptions) -> Result<ExtremalCatalog> {
    complete(search_extremal(n, spec, CatalogKind::Edge, opts, SearchControl::default())?)
}

/// Maximum spectral radius over kF-free graphs on `n` vertices and the classes attaining it.
pub fn spectral_extremal(n: usize, spec: &ProblemSpec, opts: &SearchOptions) -> Result<ExtremalCatalog> {
    complete(search_extremal(n, spec, CatalogKind::Spectral, opts, SearchControl::default())?)
}

fn complete(outcome: SearchOutcome) -> Result<ExtremalCatalog> {
    match outcome {
        SearchOutcome::Complete(c) => Ok(c),
        SearchOutcome::Interrupted(_) => Err(Error::Invariant("search stopped without a stop request".into())),
    }
}

pub fn search_extremal(
    n: usize,
    spec: &ProblemSpec,
    kind: CatalogKind,
    opts: &SearchOptions,
    control: SearchControl,
) -> Result<SearchOutcome> {
    check_order(n, opts.order_cap)?;
    if opts.tol.is_nan() || opts.tol <= 0.0 {
        return Err(Error::Input(format!("tolerance must be positive, got {}", opts.tol)));
    }
    let started = Instant::now();
    let admits = |g: &Graph| is_family_free(g, spec);
    let depth = opts.depth_for(n);
    let mut front_stats = EnumerationStats::default();
    let roots = frontier(depth, &admits, &mut front_stats);
    let root_names: Vec<String> = roots.iter().map(graph6::encode).collect();
    let family = spec.descriptor();

    let (mut done, mut acc) = match control.resume {
        Some(cp) => {
            if cp.version != CHECKPOINT_VERSION
                || cp.n != n
                || cp.family != family
                || cp.kind != kind
                || cp.split_depth != depth
                || cp.tol != opts.tol
            {
                return Err(Error::Input("checkpoint does not match this search".into()));
            }
            if !root_names.starts_with(&cp.completed_roots) {
                return Err(Error::Input("checkpoint task list does not match the frontier".into()));
            }
            (cp.completed_roots.len(), cp.partial)
        }
        None => (0, PartialCatalog::default()),
    };

    let batch = if opts.parallel {
        rayon::current_num_threads() * 4
    } else {
        1
    };
    let mut budget = control.stop_after_tasks;
    while done < roots.len() {
        let mut take = batch.min(roots.len() - done);
        if let Some(b) = budget {
            if b == 0 {
                break;
            }
            take = take.min(b);
            budget = Some(b - take);
        }
        let slice = &roots[done..done + take];
        let run = |root: &Graph| run_task(root, n, &admits, kind, opts.tol);
        let parts: Vec<Result<PartialCatalog>> = if opts.parallel {
            slice.par_iter().map(run).collect()
        } else {
            slice.iter().map(run).collect()
        };
        for p in parts {
            acc = acc.merge(p?);
        }
        done += take;
        if let Some(path) = &control.checkpoint_path {
            checkpoint(n, &family, kind, opts.tol, depth, &root_names[..done], &acc).write(path)?;
        }
    }
    if done < roots.len() {
        return Ok(SearchOutcome::Interrupted(checkpoint(
            n,
            &family,
            kind,
            opts.tol,
            depth,
            &root_names[..done],
            &acc,
        )));
    }

    let mut stats = acc.stats.clone();
    stats.nodes_visited += front_stats.nodes_visited;
    stats.pruned += front_stats.pruned;
    stats.wall_time_ms = started.elapsed().as_millis();
    let catalog = match kind {
        CatalogKind::Edge => ExtremalCatalog {
            schema_version: SCHEMA_VERSION,
            n,
            family,
            kind,
            value: CatalogValue::Edges(acc.best_edges.unwrap_or(0)),
            graphs: acc.edge_graphs,
            certificates: vec![],
            runner_up: None,
            ambiguous: false,
            stats,
        },
        CatalogKind::Spectral => {
            let (certs, runner_up, ambiguous) = tighten(acc.spectral, acc.runner_up, opts.tol)?;
            let value = certs.iter().map(|c| c.rho).max_by(f64::total_cmp).unwrap_or(0.0);
            ExtremalCatalog {
                schema_version: SCHEMA_VERSION,
                n,
                family,
                kind,
                value: CatalogValue::Rho(value),
                graphs: certs.iter().map(|c| c.graph6.clone()).collect(),
                certificates: certs,
                runner_up,
                ambiguous,
                stats,
            }
        }
    };
    Ok(SearchOutcome::Complete(catalog))
}

fn checkpoint(
    n: usize,
    family: &FamilyDescriptor,
    kind: CatalogKind,
    tol: f64,
    split_depth: usize,
    completed: &[String],
    partial: &PartialCatalog,
) -> SearchCheckpoint {
    SearchCheckpoint {
        version: CHECKPOINT_VERSION,
        n,
        family: family.clone(),
        kind,
        tol,
        split_depth,
        completed_roots: completed.to_vec(),
        partial: partial.clone(),
    }
}

fn run_task(
    root: &Graph,
    n: usize,
    admits: &(dyn Fn(&Graph) -> bool + Sync),
    kind: CatalogKind,
    tol: f64,
) -> Result<PartialCatalog> {
    let mut partial = PartialCatalog::default();
    let mut stats = EnumerationStats::default();
    let mut failure = None;
    walk(root, n, admits, &mut stats, &mut |g| match kind {
        CatalogKind::Edge => partial.offer_edge(g),
        CatalogKind::Spectral => {
            if failure.is_none() {
                if let Err(e) = partial.offer_spectral(g, tol) {
                    failure = Some(e);
                }
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    partial.edge_graphs.sort();
    partial.stats.nodes_visited += stats.nodes_visited;
    partial.stats.pruned += stats.pruned;
    Ok(partial)
}

/// Recomputes overlapping classes at tighter tolerances until one remains
/// or the tolerance floor is reached.
fn tighten(
    mut certs: Vec<RhoCertificate>,
    runner_up: Option<RhoCertificate>,
    tol: f64,
) -> Result<(Vec<RhoCertificate>, Option<RhoCertificate>, bool)> {
    let mut partial = PartialCatalog {
        spectral: std::mem::take(&mut certs),
        runner_up,
        ..Default::default()
    };
    let mut current = tol;
    while partial.spectral.len() > 1 && current > TIGHTEST_TOL {
        current = (current / 100.0).max(TIGHTEST_TOL);
        let mut refined = Vec::with_capacity(partial.spectral.len());
        let mut stuck = false;
        for c in &partial.spectral {
            let g = graph6::decode(&c.graph6)?;
            match spectral_radius(&g, current) {
                Ok(r) => refined.push(RhoCertificate {
                    rho: r.rho,
                    residual: r.residual,
                    ..c.clone()
                }),
                Err(Error::NoConvergence { .. }) => {
                    stuck = true;
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        if stuck {
            break;
        }
        partial.spectral = refined;
        partial.normalize();
    }
    let ambiguous = partial.spectral.len() > 1;
    Ok((partial.spectral, partial.runner_up, ambiguous))
}
