//! Exact cops-and-robbers machinery for small graphs.
//!
//! The pieces fit together as a pipeline: [`graph`] holds bitset adjacency
//! for graphs on up to 62 vertices, [`canon`] computes canonical forms (so
//! isomorphism is byte equality), [`solver`] decides the pursuit game by
//! retrograde analysis, [`generate`] enumerates isomorphism classes by
//! vertex augmentation, [`construct`] builds the named graphs the census
//! cares about, and [`census`] ties the counts, witnesses, and reports
//! together.

pub mod canon;
pub mod census;
pub mod construct;
pub mod generate;
pub mod graph;
pub mod graph6;
pub mod solver;

pub use canon::{canonical_form, is_isomorphic, CanonicalForm};
pub use graph::{Graph, VertexSet};

/// Identifies the enumeration scheme in census metadata and checkpoints.
pub const GENERATOR_VERSION: &str = "augment-dedup/1";
/// Identifies the game solver in census metadata and certificates.
pub const SOLVER_VERSION: &str = "retrograde/1";
