use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6;
use crate::invariants::{chromatic_number, max_disjoint_copies};

/// Where the excess `a` in `ex(n, F) = e(T_{n,r}) + a` came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExcessSource {
    /// `F` is a complete graph, so Turán's theorem gives `a = 0`.
    Complete,
    Asserted,
    Measured,
    /// Not known; operations needing `a` refuse to run.
    Unknown,
}

/// A forbidden pattern `F` together with the multiplicity `k`: the family is kF.
#[derive(Clone, Debug)]
pub struct ProblemSpec {
    forbidden: Graph,
    k: usize,
    chromatic: usize,
    r: usize,
    excess: Option<i64>,
    source: ExcessSource,
}

impl ProblemSpec {
    /// Spec for the extremal theorems: requires `χ(F) >= 3`.
    pub fn new(forbidden: Graph, k: usize) -> Result<Self> {
        let spec = Self::for_search(forbidden, k)?;
        if spec.chromatic < 3 {
            return Err(Error::Input(format!(
                "forbidden graph has chromatic number {}; the extremal statements need χ(F) >= 3 (r >= 2)",
                spec.chromatic
            )));
        }
        Ok(spec)
    }

    /// Spec for raw extremal search; any `F` with at least one edge.
    pub fn for_search(forbidden: Graph, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Input("k must be at least 1".into()));
        }
        if forbidden.edge_count() == 0 {
            return Err(Error::Input("forbidden graph needs at least one edge".into()));
        }
        let chromatic = chromatic_number(&forbidden)?;
        let complete = forbidden.is_complete();
        Ok(ProblemSpec {
            forbidden,
            k,
            chromatic,
            r: chromatic - 1,
            excess: complete.then_some(0),
            source: if complete {
                ExcessSource::Complete
            } else {
                ExcessSource::Unknown
            },
        })
    }

    pub fn with_excess(mut self, a: i64, source: ExcessSource) -> Self {
        self.excess = Some(a);
        self.source = source;
        self
    }

    pub fn forbidden(&self) -> &Graph {
        &self.forbidden
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `r = χ(F) - 1` unless overridden.
    pub fn r(&self) -> usize {
        self.r
    }

    /// Replaces the derived `r`; constructions and formulas then use the given value.
    pub fn with_r_override(mut self, r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::Input("r must be at least 1".into()));
        }
        self.r = r;
        Ok(self)
    }

    pub fn r_overridden(&self) -> bool {
        self.r + 1 != self.chromatic
    }

    pub fn chromatic(&self) -> usize {
        self.chromatic
    }

    pub fn excess(&self) -> Option<i64> {
        self.excess
    }

    pub fn excess_source(&self) -> ExcessSource {
        self.source
    }

    /// The same pattern with multiplicity one.
    pub fn single(&self) -> ProblemSpec {
        ProblemSpec {
            k: 1,
            ..self.clone()
        }
    }

    pub fn with_k(&self, k: usize) -> ProblemSpec {
        ProblemSpec { k, ..self.clone() }
    }

    pub fn descriptor(&self) -> FamilyDescriptor {
        FamilyDescriptor {
            f_graph6: graph6::encode(&self.forbidden),
            k: self.k,
            r: self.r(),
            a: self.excess,
        }
    }
}

/// Serializable identity of a [`ProblemSpec`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDescriptor {
    #[serde(rename = "F_graph6")]
    pub f_graph6: String,
    pub k: usize,
    pub r: usize,
    pub a: Option<i64>,
}

/// `true` iff `g` has fewer than `k` vertex-disjoint copies of `F`.
pub fn is_family_free(g: &Graph, spec: &ProblemSpec) -> bool {
    max_disjoint_copies(g, &spec.forbidden, spec.k) < spec.k
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph, join, path_graph, turan_graph};

    #[test]
    fn family_free_examples() {
        let s = ProblemSpec::new(complete_graph(3), 2).unwrap();
        assert!(is_family_free(&complete_graph(5), &s));
        assert!(!is_family_free(&complete_graph(6), &s));
        for n in 4..=10 {
            let g = join(&complete_graph(1), &turan_graph(n - 1, 2));
            assert!(is_family_free(&g, &s), "n = {n}");
        }
    }

    #[test]
    fn rejects_bipartite_patterns() {
        assert!(ProblemSpec::new(path_graph(3), 2).is_err());
        let raw = ProblemSpec::for_search(path_graph(3), 2).unwrap();
        assert_eq!(raw.r(), 1);
        assert!(ProblemSpec::new(complete_graph(3), 0).is_err());
        assert!(ProblemSpec::for_search(Graph::empty(3), 1).is_err());
    }

    #[test]
    fn derived_parameters() {
        let s = ProblemSpec::new(complete_graph(4), 1).unwrap();
        assert_eq!((s.r(), s.excess(), s.excess_source()), (3, Some(0), ExcessSource::Complete));
        let c5 = ProblemSpec::new(cycle_graph(5), 1).unwrap();
        assert_eq!((c5.r(), c5.excess()), (2, None));
        assert_eq!(c5.descriptor().f_graph6, "Dhc");
    }
}
