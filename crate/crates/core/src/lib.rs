//! Turán numbers of vertex-disjoint cycles in k-uniform hypergraphs.
//!
//! - [`hypergraph`]: k-uniform hypergraphs, edge-list I/O, isomorphism.
//! - [`patterns`]: minimal, linear and Berge cycles and paths, and their
//!   detectors.
//! - [`formulas`]: exact closed-form Turán numbers.
//! - [`constructions`]: the extremal families.
//! - [`extract`]: constructive extraction of disjoint cycles.
//! - [`exact`]: exhaustive search for true values at small `n`.
//! - [`verify`]: the acceptance suite.

// Floors such as (l + 1) / 2 are kept in the form they are stated in.
#![allow(clippy::manual_div_ceil, clippy::manual_is_multiple_of)]

pub mod constructions;
pub mod edgelist;
pub mod exact;
pub mod extract;
pub mod formulas;
pub mod hypergraph;
pub mod isomorphism;
pub mod patterns;
pub mod verify;

pub use constructions::{ConstructionError, ConstructionSpec, ConstructionVariant};
pub use exact::{SearchBudget, SearchError, SearchResult};
pub use extract::{ExtractionError, ExtractionTrace, Stage};
pub use formulas::{CycleVariant, Evaluation, FormulaError, FormulaParams};
pub use hypergraph::{Edge, HypergraphError, KHypergraph, Reduced, Vertex};
pub use isomorphism::are_isomorphic;
pub use patterns::{Component, FamilySpec, PatternError, PatternKind, Witness};
