//! Closed-form combinatorial bounds and brute-force oracles for them.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{turan_edges, Graph};
use crate::graph6;
use crate::invariants::{chromatic_number, matching_number};
use crate::search::enumerate::{check_order, frontier, walk, EnumerationStats, MAX_ENUMERATION_ORDER};

/// Largest order the Chvátal–Hanson oracle enumerates by default.
pub const ORACLE_ORDER_LIMIT: usize = 12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub name: String,
    pub inputs: BTreeMap<String, Value>,
    pub bound_value: Value,
    /// Value from an oracle or a construction; absent when none was computed.
    pub witness_value: Option<Value>,
    pub satisfied: bool,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, Value>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChvatalHanson {
    /// `Δν + ⌊Δ/2⌋·⌊ν/⌈Δ/2⌉⌋`.
    pub f: u64,
    /// `Δν + ν`.
    pub relaxation: u64,
}

/// Maximum number of edges of a graph with matching number at most `nu` and
/// maximum degree at most `delta`.
pub fn chvatal_hanson(nu: u64, delta: u64) -> Result<ChvatalHanson> {
    if nu == 0 || delta == 0 {
        return Err(Error::Input(format!("nu and delta must be at least 1, got ({nu}, {delta})")));
    }
    let f = delta * nu + (delta / 2) * (nu / delta.div_ceil(2));
    let relaxation = delta * nu + nu;
    if f > relaxation {
        return Err(Error::Invariant(format!("f({nu}, {delta}) = {f} exceeds Δν + ν = {relaxation}")));
    }
    Ok(ChvatalHanson { f, relaxation })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub max_edges: u64,
    /// Lexicographically smallest canonical graph6 attaining `max_edges`.
    pub witness: String,
    pub order: usize,
    pub stats: EnumerationStats,
}

/// `max e(G)` over graphs on `nu·(delta+1)` vertices with `ν(G) <= nu`, `Δ(G) <= delta`.
pub fn brute_force_f(nu: usize, delta: usize) -> Result<OracleResult> {
    if nu == 0 || delta == 0 {
        return Err(Error::Input(format!("nu and delta must be at least 1, got ({nu}, {delta})")));
    }
    let order = nu * (delta + 1);
    if order > ORACLE_ORDER_LIMIT {
        return Err(Error::capability(
            format!("oracle order nu·(delta+1) = {order}"),
            ORACLE_ORDER_LIMIT,
            "choose smaller nu or delta",
        ));
    }
    brute_force_f_on(nu, delta, order)
}

/// As [`brute_force_f`] on exactly `order` vertices (smaller graphs are padded
/// with isolated vertices).
pub fn brute_force_f_on(nu: usize, delta: usize, order: usize) -> Result<OracleResult> {
    check_order(order, MAX_ENUMERATION_ORDER)?;
    let admits = |g: &Graph| g.max_degree() <= delta && matching_number(g) <= nu;
    let mut stats = EnumerationStats::default();
    let roots = frontier(order.min(6), &admits, &mut stats);
    let parts: Vec<(Option<(u64, String)>, EnumerationStats)> = roots
        .par_iter()
        .map(|root| {
            let mut best: Option<(u64, String)> = None;
            let mut st = EnumerationStats::default();
            walk(root, order, &admits, &mut st, &mut |g| {
                let e = g.edge_count() as u64;
                if best.as_ref().is_none_or(|(b, _)| e > *b) {
                    best = Some((e, graph6::encode(g)));
                } else if best.as_ref().is_some_and(|(b, _)| e == *b) {
                    let s = graph6::encode(g);
                    if best.as_ref().is_some_and(|(_, w)| s < *w) {
                        best = Some((e, s));
                    }
                }
            });
            (best, st)
        })
        .collect();
    let mut best: Option<(u64, String)> = None;
    for (b, st) in parts {
        stats.absorb(st);
        if let Some((e, s)) = b {
            let better = match &best {
                None => true,
                Some((be, bs)) => e > *be || (e == *be && s < *bs),
            };
            if better {
                best = Some((e, s));
            }
        }
    }
    let (max_edges, witness) = best.expect("the empty graph is always admitted");
    Ok(OracleResult {
        max_edges,
        witness,
        order,
        stats,
    })
}

/// Checks that enlarging the oracle order by two does not find more edges.
pub fn validate_oracle_order(nu: usize, delta: usize) -> Result<bool> {
    let base = brute_force_f(nu, delta)?;
    let wider = brute_force_f_on(nu, delta, base.order + 2)?;
    Ok(wider.max_edges == base.max_edges)
}

pub fn chvatal_hanson_report(nu: usize, delta: usize, oracle: bool) -> Result<BoundReport> {
    let ch = chvatal_hanson(nu as u64, delta as u64)?;
    let mut details = BTreeMap::new();
    details.insert("relaxation".into(), json!(ch.relaxation));
    let (witness_value, satisfied) = if oracle {
        let o = brute_force_f(nu, delta)?;
        details.insert("witness_graph6".into(), json!(o.witness));
        details.insert("oracle_order".into(), json!(o.order));
        (Some(json!(o.max_edges)), o.max_edges == ch.f)
    } else {
        (None, ch.f <= ch.relaxation)
    };
    Ok(BoundReport {
        name: "chvatal-hanson".into(),
        inputs: BTreeMap::from([("nu".into(), json!(nu)), ("delta".into(), json!(delta))]),
        bound_value: json!(ch.f),
        witness_value,
        satisfied,
        details,
    })
}

/// `Σ|V_i| − (k−1)·|∪V_i|`, a lower bound on `|∩V_i|`.
pub fn intersection_lower_bound<T: Ord>(sets: &[BTreeSet<T>]) -> Result<i64> {
    if sets.is_empty() {
        return Err(Error::Input("need at least one set".into()));
    }
    let total: usize = sets.iter().map(BTreeSet::len).sum();
    let union: BTreeSet<&T> = sets.iter().flatten().collect();
    Ok(total as i64 - (sets.len() as i64 - 1) * union.len() as i64)
}

pub fn intersection_size<T: Ord>(sets: &[BTreeSet<T>]) -> usize {
    match sets.split_first() {
        None => 0,
        Some((first, rest)) => first.iter().filter(|x| rest.iter().all(|s| s.contains(x))).count(),
    }
}

pub fn intersection_report(sets: &[BTreeSet<i64>]) -> Result<BoundReport> {
    let bound = intersection_lower_bound(sets)?;
    let actual = intersection_size(sets);
    Ok(BoundReport {
        name: "intersection".into(),
        inputs: BTreeMap::from([("sets".into(), json!(sets))]),
        bound_value: json!(bound),
        witness_value: Some(json!(actual)),
        satisfied: bound <= actual as i64,
        details: BTreeMap::new(),
    })
}

/// A nonnegative rational `num / den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rational {
    pub num: i128,
    pub den: i128,
}

impl Rational {
    fn new(num: i128, den: i128) -> Self {
        let g = gcd(num.abs(), den.abs()).max(1);
        Rational {
            num: num / g,
            den: den / g,
        }
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    fn le_int(self, v: i128) -> bool {
        self.num <= v * self.den
    }

    fn ge_int(self, v: i128) -> bool {
        self.num >= v * self.den
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TuranBounds {
    pub lower: Rational,
    pub upper: Rational,
    pub exact: u64,
}

/// `(1−1/r)n²/2 − r/8 <= e(T_{n,r}) <= (1−1/r)n²/2`, in exact arithmetic.
pub fn turan_edge_bounds(n: usize, r: usize) -> Result<TuranBounds> {
    if r == 0 {
        return Err(Error::Input("r must be at least 1".into()));
    }
    let (n, ri) = (n as i128, r as i128);
    let upper = Rational::new((ri - 1) * n * n, 2 * ri);
    let lower = Rational::new(4 * (ri - 1) * n * n - ri * ri, 8 * ri);
    let exact = turan_edges(n as usize, r) as u64;
    if !(lower.le_int(exact as i128) && upper.ge_int(exact as i128)) {
        return Err(Error::Invariant(format!("e(T_{{{n},{r}}}) = {exact} escapes its bounds")));
    }
    Ok(TuranBounds { lower, upper, exact })
}

pub fn turan_report(n: usize, r: usize) -> Result<BoundReport> {
    let b = turan_edge_bounds(n, r)?;
    Ok(BoundReport {
        name: "turan".into(),
        inputs: BTreeMap::from([("n".into(), json!(n)), ("r".into(), json!(r))]),
        bound_value: json!([b.lower.to_f64(), b.upper.to_f64()]),
        witness_value: Some(json!(b.exact)),
        satisfied: true,
        details: BTreeMap::from([
            ("lower_exact".into(), json!(format!("{}/{}", b.lower.num, b.lower.den))),
            ("upper_exact".into(), json!(format!("{}/{}", b.upper.num, b.upper.den))),
        ]),
    })
}

/// Leading term `(1 − 1/(χ(F)−1))·n²/2` of `ex(n, F)`; an estimate only.
pub fn erdos_stone_estimate(n: usize, f: &Graph) -> Result<f64> {
    let chi = chromatic_number(f)?;
    if chi < 2 {
        return Err(Error::NotApplicable("F has no edges, so every graph contains it".into()));
    }
    let n = n as f64;
    Ok((1.0 - 1.0 / (chi - 1) as f64) * n * n / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph};

    #[test]
    fn chvatal_hanson_values() {
        assert_eq!(chvatal_hanson(1, 2).unwrap().f, 3);
        assert_eq!(chvatal_hanson(2, 3).unwrap().f, 7);
        assert_eq!(chvatal_hanson(1, 1).unwrap().f, 1);
        // two disjoint triangles
        assert_eq!(chvatal_hanson(2, 2).unwrap().f, 6);
        assert!(chvatal_hanson(0, 2).is_err());
    }

    #[test]
    fn oracle_small() {
        assert_eq!(brute_force_f(1, 2).unwrap().max_edges, 3);
        assert_eq!(brute_force_f(2, 2).unwrap().max_edges, 6);
        assert_eq!(brute_force_f(2, 3).unwrap().max_edges, 7);
        assert!(matches!(brute_force_f(3, 4), Err(Error::Capability { .. })));
    }

    #[test]
    fn oracle_order_is_enough_for_small_pairs() {
        for (nu, delta) in [(1, 1), (1, 2), (2, 1), (1, 3)] {
            assert!(validate_oracle_order(nu, delta).unwrap(), "({nu}, {delta})");
        }
    }

    #[test]
    fn intersection_examples() {
        let a: BTreeSet<i64> = [1, 2, 3].into();
        let b: BTreeSet<i64> = [2, 3, 4, 5].into();
        assert_eq!(intersection_lower_bound(&[a.clone(), b.clone()]).unwrap(), 2);
        assert_eq!(intersection_lower_bound(&[a.clone(), a.clone(), a.clone()]).unwrap(), 3);
        assert!(intersection_lower_bound::<i64>(&[]).is_err());
    }

    #[test]
    fn turan_bounds() {
        let b = turan_edge_bounds(6, 2).unwrap();
        assert_eq!((b.exact, b.lower.to_f64(), b.upper.to_f64()), (9, 8.75, 9.0));
        let b = turan_edge_bounds(7, 3).unwrap();
        assert_eq!(b.exact, 16);
        assert!((b.lower.to_f64() - 15.958333).abs() < 1e-6);
        assert!((b.upper.to_f64() - 16.333333).abs() < 1e-6);
        for n in 0..=500 {
            for r in 1..=10 {
                let b = turan_edge_bounds(n, r).unwrap();
                if n % r == 0 {
                    assert!(b.upper.ge_int(b.exact as i128) && b.upper.le_int(b.exact as i128));
                }
            }
        }
    }

    #[test]
    fn erdos_stone() {
        assert_eq!(erdos_stone_estimate(100, &complete_graph(3)).unwrap(), 2500.0);
        assert!((erdos_stone_estimate(100, &complete_graph(4)).unwrap() - 10000.0 / 3.0).abs() < 1e-9);
        assert_eq!(erdos_stone_estimate(100, &cycle_graph(5)).unwrap(), 2500.0);
        assert!(matches!(erdos_stone_estimate(10, &Graph::empty(3)), Err(Error::NotApplicable(_))));
    }
}
