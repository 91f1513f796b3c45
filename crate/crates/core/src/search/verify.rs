//! Finite-range checks of the edge and spectral extremal statements.
//!
//! Verdicts are recorded per order; small-order deviations are data, not errors.

use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::invariants::ProblemSpec;
use crate::search::catalog::{CatalogValue, RhoCertificate};
use crate::search::construct::{construction_classes, construction_threshold, lower_bound_edges};
use crate::search::extremal::{edge_extremal, spectral_extremal, SearchOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    /// The extremal classes are exactly the construction.
    Equal,
    /// The construction is extremal but other classes tie with it.
    ConstructionAmongExtremal,
    Differs,
    /// `n` is below the order at which the construction is defined.
    NotApplicable,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Equal => "EQUAL",
            Verdict::ConstructionAmongExtremal => "CONSTRUCTION_AMONG_EXTREMAL",
            Verdict::Differs => "DIFFERS",
            Verdict::NotApplicable => "NOT_APPLICABLE",
        }
    }
}

fn compare(extremal: &[String], construction: &[String]) -> Verdict {
    if construction.is_empty() {
        Verdict::NotApplicable
    } else if extremal == construction {
        Verdict::Equal
    } else if construction.iter().all(|c| extremal.binary_search(c).is_ok()) {
        Verdict::ConstructionAmongExtremal
    } else {
        Verdict::Differs
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeRow {
    pub n: usize,
    pub ex: u64,
    /// Lower-bound formula, when the excess `a` is known.
    pub lower_bound: Option<i64>,
    pub extremal: Vec<String>,
    pub construction: Vec<String>,
    pub verdict: Verdict,
    /// For `k = 1` and complete `F` anything but `EQUAL` contradicts Turán's theorem.
    pub violation: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeVerification {
    pub rows: Vec<EdgeRow>,
    /// Smallest tested `n` from which every verdict is `EQUAL`.
    pub equal_from: Option<usize>,
}

impl EdgeVerification {
    pub fn has_violation(&self) -> bool {
        self.rows.iter().any(|r| r.violation)
    }
}

pub fn verify_edge_theorem(
    ns: RangeInclusive<usize>,
    spec: &ProblemSpec,
    opts: &SearchOptions,
) -> Result<EdgeVerification> {
    let unconditional = spec.k() == 1 && spec.forbidden().is_complete();
    let mut rows = Vec::new();
    for n in ns {
        let cat = edge_extremal(n, spec, opts)?;
        let construction = if n >= construction_threshold(spec) {
            construction_classes(n, spec, opts)?
        } else {
            vec![]
        };
        let verdict = compare(&cat.graphs, &construction);
        let ex = match cat.value {
            CatalogValue::Edges(e) => e,
            CatalogValue::Rho(_) => unreachable!("edge catalog"),
        };
        rows.push(EdgeRow {
            n,
            ex,
            lower_bound: lower_bound_edges(n, spec).ok(),
            extremal: cat.graphs,
            construction,
            verdict,
            violation: unconditional && verdict != Verdict::Equal && verdict != Verdict::NotApplicable,
        });
    }
    Ok(EdgeVerification {
        equal_from: equal_from(rows.iter().map(|r| (r.n, r.verdict))),
        rows,
    })
}

fn equal_from(verdicts: impl DoubleEndedIterator<Item = (usize, Verdict)>) -> Option<usize> {
    let mut from = None;
    for (n, v) in verdicts.rev() {
        if v != Verdict::Equal {
            break;
        }
        from = Some(n);
    }
    from
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralRow {
    pub n: usize,
    pub rho: f64,
    pub spectral: Vec<RhoCertificate>,
    /// Every spectral-extremal class is edge-extremal.
    pub contained: bool,
    pub edge_extremal: Vec<String>,
    /// The spectral-extremal classes are exactly the construction.
    pub matches_construction: Option<bool>,
    pub runner_up: Option<RhoCertificate>,
    /// Smallest listed radius minus the runner-up radius.
    pub gap: Option<f64>,
    /// The gap exceeds the summed residuals of the two sides.
    pub gap_certified: bool,
    pub ambiguous: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralVerification {
    pub rows: Vec<SpectralRow>,
}

pub fn verify_spectral_theorem(
    ns: RangeInclusive<usize>,
    spec: &ProblemSpec,
    opts: &SearchOptions,
) -> Result<SpectralVerification> {
    let mut rows = Vec::new();
    for n in ns {
        let sp = spectral_extremal(n, spec, opts)?;
        let ed = edge_extremal(n, spec, opts)?;
        let contained = sp.graphs.iter().all(|g| ed.contains(g));
        let matches_construction = if n >= construction_threshold(spec) {
            Some(construction_classes(n, spec, opts)? == sp.graphs)
        } else {
            None
        };
        let weakest = sp
            .certificates
            .iter()
            .min_by(|a, b| a.rho.total_cmp(&b.rho))
            .cloned();
        let (gap, gap_certified) = match (&weakest, &sp.runner_up) {
            (Some(w), Some(ru)) => {
                let gap = w.rho - ru.rho;
                (Some(gap), gap > w.residual + ru.residual)
            }
            _ => (None, false),
        };
        rows.push(SpectralRow {
            n,
            rho: sp.value.as_f64(),
            spectral: sp.certificates,
            contained,
            edge_extremal: ed.graphs,
            matches_construction,
            runner_up: sp.runner_up,
            gap,
            gap_certified,
            ambiguous: sp.ambiguous,
        });
    }
    Ok(SpectralVerification { rows })
}
