//! Spectral radius of adjacency matrices with a residual certificate.
//!
//! For a symmetric matrix `A` and any nonzero `x`, some eigenvalue lies within
//! `‖Ax − θx‖ / ‖x‖` of the Rayleigh quotient `θ`. Iteration runs on `A + I`,
//! which is nonnegative with a strictly dominant eigenvalue `ρ + 1` on each
//! connected component, so the bipartite `±ρ` pair cannot stall convergence.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{complete_graph, complete_multipartite, join, Graph, PartSizes};

pub const ITERATION_CAP: usize = 1_000_000;
/// Iterations without a new best residual before the run is declared stuck.
const STALL_LIMIT: usize = 20_000;
const SHIFT: f64 = 1.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralResult {
    pub rho: f64,
    /// Perron vector scaled to maximum entry exactly 1; zero off the chosen component.
    pub vector: Vec<f64>,
    /// `‖Ax − ρx‖₂ / ‖x‖₂`, bounding the distance from `rho` to an eigenvalue.
    pub residual: f64,
    pub iterations: usize,
    /// Set for the null graph, whose spectral radius is 0 by convention.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub empty: bool,
}

impl SpectralResult {
    pub fn lower(&self) -> f64 {
        self.rho - self.residual
    }

    pub fn upper(&self) -> f64 {
        self.rho + self.residual
    }
}

/// Certified spectral radius of `g`, with `residual <= tol`.
///
/// Disconnected graphs are handled per component; the component with the
/// largest spectral radius supplies the result.
pub fn spectral_radius(g: &Graph, tol: f64) -> Result<SpectralResult> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Input(format!("tolerance must be positive, got {tol}")));
    }
    let n = g.n();
    if n == 0 {
        return Ok(SpectralResult {
            rho: 0.0,
            vector: vec![],
            residual: 0.0,
            iterations: 0,
            empty: true,
        });
    }
    if g.edge_count() == 0 {
        return Ok(SpectralResult {
            rho: 0.0,
            vector: vec![1.0; n],
            residual: 0.0,
            iterations: 0,
            empty: false,
        });
    }
    let mut best: Option<(Vec<usize>, SpectralResult)> = None;
    let mut total_iterations = 0;
    for comp in g.components().into_iter().filter(|c| c.len() > 1) {
        let sub = g.induced_subgraph(&comp)?;
        let adj: Vec<Vec<usize>> = (0..sub.n()).map(|v| sub.neighbors(v).collect()).collect();
        let res = power_iteration(|x, y| sparse_apply(&adj, x, y), sub.n(), tol)?;
        total_iterations += res.iterations;
        if best.as_ref().is_none_or(|(_, b)| res.rho > b.rho) {
            best = Some((comp, res));
        }
    }
    let (comp, res) = best.expect("a graph with edges has a nontrivial component");
    let mut vector = vec![0.0; n];
    for (i, &v) in comp.iter().enumerate() {
        vector[v] = res.vector[i];
    }
    Ok(SpectralResult {
        vector,
        iterations: total_iterations,
        ..res
    })
}

/// Spectral radii of many graphs in parallel; output `i` belongs to input `i`.
pub fn spectral_radius_batch(graphs: &[Graph], tol: f64) -> Vec<Result<SpectralResult>> {
    graphs.par_iter().map(|g| spectral_radius(g, tol)).collect()
}

fn sparse_apply(adj: &[Vec<usize>], x: &[f64], y: &mut [f64]) {
    for (yi, nbrs) in y.iter_mut().zip(adj) {
        *yi = nbrs.iter().map(|&j| x[j]).sum();
    }
}

fn dense_apply(m: &[Vec<f64>], x: &[f64], y: &mut [f64]) {
    for (yi, row) in y.iter_mut().zip(m) {
        *yi = row.iter().zip(x).map(|(a, b)| a * b).sum();
    }
}

/// Shifted power iteration for a symmetric nonnegative irreducible operator.
fn power_iteration(apply: impl Fn(&[f64], &mut [f64]), n: usize, tol: f64) -> Result<SpectralResult> {
    let mut x = vec![1.0; n];
    let mut ax = vec![0.0; n];
    let mut best_residual = f64::INFINITY;
    let mut since_best = 0;
    for it in 1..=ITERATION_CAP {
        apply(&x, &mut ax);
        let (_, residual) = rayleigh_and_residual(&x, &ax);
        if residual <= tol {
            return Ok(finish(&apply, x, it));
        }
        if residual < best_residual {
            best_residual = residual;
            since_best = 0;
        } else {
            since_best += 1;
            if since_best > STALL_LIMIT {
                return Err(Error::NoConvergence {
                    iterations: it,
                    residual: best_residual,
                });
            }
        }
        let mut peak = 0.0f64;
        for (xi, &a) in x.iter_mut().zip(&ax) {
            *xi = a + SHIFT * *xi;
            peak = peak.max(*xi);
        }
        for xi in &mut x {
            *xi /= peak;
        }
    }
    Err(Error::NoConvergence {
        iterations: ITERATION_CAP,
        residual: best_residual,
    })
}

/// Rescales to max entry exactly 1 and recomputes the certificate for the returned vector.
fn finish(apply: &impl Fn(&[f64], &mut [f64]), mut x: Vec<f64>, iterations: usize) -> SpectralResult {
    let peak = x.iter().copied().fold(0.0f64, f64::max);
    for xi in &mut x {
        *xi /= peak;
    }
    let mut ax = vec![0.0; x.len()];
    apply(&x, &mut ax);
    let (rho, residual) = rayleigh_and_residual(&x, &ax);
    SpectralResult {
        rho,
        vector: x,
        residual,
        iterations,
        empty: false,
    }
}

fn rayleigh_and_residual(x: &[f64], ax: &[f64]) -> (f64, f64) {
    let xx: f64 = x.iter().map(|v| v * v).sum();
    let theta = x.iter().zip(ax).map(|(a, b)| a * b).sum::<f64>() / xx;
    let rr: f64 = x
        .iter()
        .zip(ax)
        .map(|(a, b)| (b - theta * a).powi(2))
        .sum();
    (theta, (rr / xx).sqrt())
}

/// `max_i |ρ x_i − Σ_{ij ∈ E} x_j|`.
pub fn eigen_residual(g: &Graph, rho: f64, x: &[f64]) -> Result<f64> {
    check_dimension(g, x)?;
    Ok((0..g.n())
        .map(|i| (rho * x[i] - g.neighbors(i).map(|j| x[j]).sum::<f64>()).abs())
        .fold(0.0, f64::max))
}

/// `2 Σ_{ij ∈ E} x_i x_j / Σ x_i²` for a nonzero nonnegative `x`.
pub fn rayleigh_quotient(g: &Graph, x: &[f64]) -> Result<f64> {
    check_dimension(g, x)?;
    if x.iter().any(|&v| v < 0.0 || v.is_nan()) {
        return Err(Error::Input("Rayleigh quotient vector must be nonnegative".into()));
    }
    let xx: f64 = x.iter().map(|v| v * v).sum();
    if xx == 0.0 {
        return Err(Error::Input("Rayleigh quotient of the zero vector".into()));
    }
    let num: f64 = g.edges().iter().map(|&(i, j)| x[i] * x[j]).sum();
    Ok(2.0 * num / xx)
}

fn check_dimension(g: &Graph, x: &[f64]) -> Result<()> {
    if x.len() != g.n() {
        return Err(Error::Input(format!(
            "vector has dimension {} but graph has order {}",
            x.len(),
            g.n()
        )));
    }
    Ok(())
}

/// `K_c ∨ K(n_1, …, n_r)` described by its equitable partition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientSpec {
    pub sizes: PartSizes,
    /// Order of the joined clique (`k − 1`).
    pub clique: usize,
}

impl QuotientSpec {
    pub fn new(sizes: PartSizes, clique: usize) -> Self {
        QuotientSpec { sizes, clique }
    }

    pub fn order(&self) -> usize {
        self.clique + self.sizes.total()
    }

    /// The graph itself: clique vertices first, then the parts in order.
    pub fn expand(&self) -> Graph {
        join(&complete_graph(self.clique), &complete_multipartite(&self.sizes))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuotientResult {
    pub rho: f64,
    /// Eigenvector entry per part, followed by the clique entry when `clique > 0`.
    /// Scaled so the clique entry is 1, or the largest entry when there is no clique.
    pub part_values: Vec<f64>,
    pub residual: f64,
    pub iterations: usize,
}

/// Largest eigenvalue of the quotient matrix of the partition
/// `(V_1, …, V_r, clique)` and its part-constant eigenvector.
///
/// The quotient matrix `B` (`B_ij` = neighbours in block `j` of a vertex in
/// block `i`) is diagonally similar to the symmetric `S_ij = √(B_ij B_ji)`, so
/// the iteration runs on `S` and inherits the symmetric residual bound.
pub fn quotient_rho(spec: &QuotientSpec, tol: f64) -> Result<QuotientResult> {
    if spec.order() == 0 {
        return Err(Error::Input("quotient spec has no vertices".into()));
    }
    let mut block: Vec<f64> = spec.sizes.sizes().iter().map(|&s| s as f64).collect();
    let parts = block.len();
    if spec.clique > 0 {
        block.push(spec.clique as f64);
    }
    let m = block.len();
    let mut s = vec![vec![0.0; m]; m];
    for i in 0..m {
        for j in 0..m {
            s[i][j] = if i != j {
                (block[i] * block[j]).sqrt()
            } else if i == parts {
                block[i] - 1.0
            } else {
                0.0
            };
        }
    }
    let res = if m == 1 && s[0][0] == 0.0 {
        SpectralResult {
            rho: 0.0,
            vector: vec![1.0],
            residual: 0.0,
            iterations: 0,
            empty: false,
        }
    } else {
        power_iteration(|x, y| dense_apply(&s, x, y), m, tol)?
    };
    let mut values: Vec<f64> = res
        .vector
        .iter()
        .zip(&block)
        .map(|(z, b)| z / b.sqrt())
        .collect();
    let scale = if spec.clique > 0 {
        values[parts]
    } else {
        values.iter().copied().fold(0.0, f64::max)
    };
    for v in &mut values {
        *v /= scale;
    }
    Ok(QuotientResult {
        rho: res.rho,
        part_values: values,
        residual: res.residual,
        iterations: res.iterations,
    })
}

/// `max_i |y_i − (ρ + 1)/(ρ + n_i)|` for the part-constant Perron vector of
/// `K_c ∨ K(n_1, …, n_r)` normalised so the clique entry is 1.
pub fn perron_formula_check(spec: &QuotientSpec, tol: f64) -> Result<f64> {
    if spec.clique == 0 {
        return Err(Error::NotApplicable(
            "the part-entry formula needs a nonempty joined clique".into(),
        ));
    }
    let q = quotient_rho(spec, tol)?;
    Ok(spec
        .sizes
        .sizes()
        .iter()
        .zip(&q.part_values)
        .map(|(&ni, &y)| (y - (q.rho + 1.0) / (q.rho + ni as f64)).abs())
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{disjoint_union, star_graph, turan_graph};

    const TOL: f64 = 1e-12;

    #[test]
    fn regular_examples() {
        let r = spectral_radius(&turan_graph(6, 2), TOL).unwrap();
        assert!((r.rho - 3.0).abs() <= TOL);
        for k in 2..8 {
            let r = spectral_radius(&complete_graph(k), TOL).unwrap();
            assert!((r.rho - (k - 1) as f64).abs() <= TOL);
            assert!(r.vector.iter().all(|&v| v == 1.0));
        }
    }

    #[test]
    fn hub_over_four_cycle() {
        let g = join(&complete_graph(1), &turan_graph(4, 2));
        let r = spectral_radius(&g, TOL).unwrap();
        assert!((r.rho - (1.0 + 5f64.sqrt())).abs() <= 1e-10);
        assert!(r.residual <= TOL);
        assert!(r.vector.iter().all(|&v| v > 0.0 && v <= 1.0));
        assert_eq!(r.vector.iter().copied().fold(0.0, f64::max), 1.0);
        let rq = rayleigh_quotient(&g, &r.vector).unwrap();
        assert!((rq - r.rho).abs() <= 1e-10);
    }

    #[test]
    fn disconnected_uses_best_component() {
        let g = disjoint_union(&star_graph(4), &complete_graph(4));
        let r = spectral_radius(&g, TOL).unwrap();
        assert!((r.rho - 3.0).abs() <= 1e-10);
        assert!(r.vector[..5].iter().all(|&v| v == 0.0));
        let e = spectral_radius(&Graph::empty(0), TOL).unwrap();
        assert!(e.empty && e.rho == 0.0);
        assert_eq!(spectral_radius(&Graph::empty(3), TOL).unwrap().rho, 0.0);
        assert!(spectral_radius(&complete_graph(3), 0.0).is_err());
    }

    #[test]
    fn residual_and_rayleigh_examples() {
        let ones6 = vec![1.0; 6];
        assert_eq!(eigen_residual(&turan_graph(6, 2), 3.0, &ones6).unwrap(), 0.0);
        let ones3 = vec![1.0; 3];
        assert_eq!(eigen_residual(&complete_graph(3), 2.0, &ones3).unwrap(), 0.0);
        assert_eq!(eigen_residual(&complete_graph(3), 1.0, &ones3).unwrap(), 1.0);
        assert!(eigen_residual(&complete_graph(3), 1.0, &ones6).is_err());
        assert_eq!(rayleigh_quotient(&turan_graph(6, 2), &ones6).unwrap(), 3.0);
        let g = join(&complete_graph(2), &turan_graph(5, 2));
        let n = g.n() as f64;
        let rq = rayleigh_quotient(&g, &vec![1.0; g.n()]).unwrap();
        assert!((rq - 2.0 * g.edge_count() as f64 / n).abs() < 1e-12);
        assert!(rayleigh_quotient(&g, &vec![0.0; g.n()]).is_err());
    }

    #[test]
    fn quotient_examples() {
        let q = |s: Vec<usize>, c| QuotientSpec::new(PartSizes::new(s).unwrap(), c);
        assert!((quotient_rho(&q(vec![3, 3], 0), TOL).unwrap().rho - 3.0).abs() <= 1e-10);
        assert!((quotient_rho(&q(vec![2, 2], 1), TOL).unwrap().rho - (1.0 + 5f64.sqrt())).abs() <= 1e-10);
        assert!((quotient_rho(&q(vec![1, 1], 0), TOL).unwrap().rho - 1.0).abs() <= 1e-10);
        assert_eq!(quotient_rho(&q(vec![4], 0), TOL).unwrap().rho, 0.0);
        assert!(perron_formula_check(&q(vec![2, 2], 1), TOL).unwrap() < 1e-10);
        assert!(perron_formula_check(&q(vec![1, 1], 1), TOL).unwrap() < 1e-12);
        assert!(matches!(
            perron_formula_check(&q(vec![2, 2], 0), TOL),
            Err(Error::NotApplicable(_))
        ));
        for m in 1..=50 {
            assert!(perron_formula_check(&q(vec![m, m], 1), TOL).unwrap() < 1e-8, "m = {m}");
        }
    }
}
