//! Exact cospectral-vertex analysis for small graphs.
//!
//! * [`graph`], [`graph6`], [`connectivity`]: bit-row graphs and their I/O.
//! * [`walk`]: closed-walk profiles, cospectrality, walk-regularity, cycle counts.
//! * [`symmetry`]: automorphism orbits and canonical forms.
//! * [`enumerate`]: isomorph-free generation and the censuses built on it.
//! * [`reproduce`]: expected-versus-observed runs of the published results.
//! * [`planar`]: rotation systems, faces, Schläfli symbols, planarity and the
//!   polyhedral catalog audit.

pub mod connectivity;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod partition;
pub mod planar;
pub mod reproduce;
pub mod symmetry;
pub mod walk;

pub use error::{Error, Result};
pub use graph::{Graph, GraphJson, VertexId};
pub use partition::Partition;
