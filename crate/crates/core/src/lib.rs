//! A laboratory for linkedness of polytope graphs.
//!
//! Polytopes are handled purely combinatorially through their vertex–facet
//! incidences ([`polytope`]). Their graphs feed exact algorithms for
//! connectivity and vertex-disjoint paths ([`graph`]), constructive linkage
//! procedures built on rooted complete subdivisions and simplex faces
//! ([`subdivision`], [`linker`]), and a recognizer for joins of sums of
//! simplices ([`cofacet`]). [`bounds`], [`witness`] and [`expr`] provide the
//! bound formulas, low-linkedness constructions and a small construction
//! language; [`verify`] bundles the end-to-end checks.

// floor formulas are kept in the ⌊(a + b)/c⌋ shape they are stated in
#![allow(clippy::manual_div_ceil)]

pub mod bounds;
pub mod cofacet;
pub mod expr;
pub mod graph;
pub mod linker;
pub mod polytope;
pub mod subdivision;
pub mod verify;
pub mod vertex_set;
pub mod witness;

pub use graph::{Graph, Linkage, Pairing};
pub use polytope::CombinatorialPolytope;
pub use vertex_set::VertexSet;
