//! Exhaustive extremal search and the candidate constructions it is checked against.

pub mod catalog;
pub mod construct;
pub mod enumerate;
pub mod extremal;
pub mod verify;

pub use catalog::{CatalogKind, CatalogValue, ExtremalCatalog, RhoCertificate, SearchStats, SCHEMA_VERSION};
pub use construct::{construct_candidates, lower_bound_edges, measure_excess, ExcessMeasurement};
pub use enumerate::{
    count_classes, enumerate, enumerate_family_free, EnumerationStats, DEFAULT_ORDER_CAP, MAX_ENUMERATION_ORDER,
};
pub use extremal::{
    edge_extremal, search_extremal, spectral_extremal, PartialCatalog, SearchCheckpoint, SearchControl,
    SearchOptions, SearchOutcome, DEFAULT_TOL,
};
pub use verify::{
    verify_edge_theorem, verify_spectral_theorem, EdgeRow, EdgeVerification, SpectralRow, SpectralVerification,
    Verdict,
};
