//! Extremal graph computations for disjoint copies of a forbidden graph:
//! Turán-type constructions, isomorph-free exhaustive search for edge- and
//! spectral-extremal graphs at small orders, certified spectral radii, and
//! the combinatorial bounds used alongside them.

pub mod bounds;
pub mod canon;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod invariants;
pub mod named;
pub mod search;
pub mod spectral;

pub use error::{Error, Result};
pub use graph::{Graph, PartSizes};
pub use invariants::ProblemSpec;
