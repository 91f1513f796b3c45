//! Containment, packing, matching, colouring and partition diagnostics.

pub mod coloring;
pub mod containment;
pub mod matching;
pub mod partition;
pub mod peel;
pub mod problem;

pub use coloring::{chromatic_number, CHROMATIC_ORDER_LIMIT};
pub use containment::{contains_subgraph, copy_vertex_sets, find_embedding, for_each_embedding, max_disjoint_copies};
pub use matching::{matching_number, maximum_matching};
pub use partition::{edit_distance_to_turan, max_crossing_partition, Mode, PartitionAssignment};
pub use peel::{classify_low_and_dense, low_degree_peel, Classification, PeelStep, PeelTrace};
pub use problem::{is_family_free, ExcessSource, FamilyDescriptor, ProblemSpec};
