//! Canonical graph structure, exact plane representations, and non-string
//! gadgets.
//!
//! A graph is great (canonical) when its vertex set splits into three
//! cliques plus a part that is the disjoint union of two cliques with no
//! edge between them. The crate decides and counts such partitions, builds
//! circle packings for the small plane templates, blows packed templates up
//! into convex point-set representations verified in exact rational
//! arithmetic, converts them to string (polyline) representations, searches
//! for the 15-vertex non-string gadgets with typed partitions, and runs
//! desk-scale counting experiments.

pub mod bitset;
pub mod convexrep;
pub mod embedding;
pub mod error;
pub mod gadgets;
pub mod geom;
pub mod graph;
pub mod graph6;
pub mod lab;
pub mod packing;
pub mod partition;
pub mod sample;
pub mod strings;
pub mod svg;

pub use bitset::VertexSet;
pub use error::ParamError;
pub use graph::Graph;
