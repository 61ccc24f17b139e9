//! Graph toolkit for vertex-critical graphs in hereditary classes: bitset
//! graphs, canonical forms, induced-pattern search, exact coloring,
//! criticality audits, structural decompositions and exhaustive generation.

pub mod canon;
pub mod coloring;
pub mod corpus;
pub mod criticality;
pub mod error;
pub mod format;
pub mod generation;
pub mod graph;
pub mod patterns;
pub mod structure;

pub use canon::{are_isomorphic, canonical_form, CanonicalForm};
pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
pub use patterns::Pattern;
