use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::invariants::problem::FamilyDescriptor;
use crate::search::enumerate::EnumerationStats;

/// Version stamped into every persisted report and catalog.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CatalogKind {
    Edge,
    Spectral,
}

impl CatalogKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CatalogKind::Edge => "edge",
            CatalogKind::Spectral => "spectral",
        }
    }
}

/// Extremal value: an edge count or a certified spectral radius.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CatalogValue {
    Edges(u64),
    Rho(f64),
}

impl CatalogValue {
    pub fn as_f64(self) -> f64 {
        match self {
            CatalogValue::Edges(e) => e as f64,
            CatalogValue::Rho(r) => r,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RhoCertificate {
    pub graph6: String,
    pub edges: u64,
    pub rho: f64,
    pub residual: f64,
}

impl RhoCertificate {
    pub fn lower(&self) -> f64 {
        self.rho - self.residual
    }

    pub fn upper(&self) -> f64 {
        self.rho + self.residual
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes_visited: u64,
    pub pruned: u64,
    /// Graphs whose spectral radius was actually computed (spectral searches).
    #[serde(default)]
    pub spectral_evaluations: u64,
    /// Wall time is reported on the console only, so that catalogs stay byte-reproducible.
    #[serde(skip)]
    pub wall_time_ms: u128,
}

impl From<EnumerationStats> for SearchStats {
    fn from(s: EnumerationStats) -> Self {
        SearchStats {
            nodes_visited: s.nodes_visited,
            pruned: s.pruned,
            ..Default::default()
        }
    }
}

/// `EX(n, kF)` or `EX_sp(n, kF)` with the extremal value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtremalCatalog {
    pub schema_version: u32,
    pub n: usize,
    pub family: FamilyDescriptor,
    pub kind: CatalogKind,
    pub value: CatalogValue,
    /// Canonical graph6 strings, sorted, duplicate-free.
    pub graphs: Vec<String>,
    /// Spectral catalogs: the certified radius of every listed graph.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub certificates: Vec<RhoCertificate>,
    /// Best class outside the catalog (spectral catalogs).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub runner_up: Option<RhoCertificate>,
    /// Spectral catalogs: several classes still overlap after tightening.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub ambiguous: bool,
    pub stats: SearchStats,
}

impl ExtremalCatalog {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("catalog serializes")
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }

    pub fn contains(&self, graph6: &str) -> bool {
        self.graphs.binary_search_by(|g| g.as_str().cmp(graph6)).is_ok()
    }
}
