//! Tropical Jacobians of graphs metrized by sharp fine saturated monoids,
//! and the discrete invariants they attach to torsors under finite flat
//! commutative group schemes on log curves.
//!
//! All arithmetic is exact. Groups come out in invariant-factor normal form
//! ([`FgAbelianGroup`]), so equality of results is isomorphism.

pub mod abgroup;
mod error;
pub mod json;
pub mod monoid;
pub mod plfun;
pub mod tropcurve;
pub mod tropjac;
pub mod torsors;

pub use abgroup::{FgAbelianGroup, IntMatrix};
pub use error::Error;
pub use monoid::{LatticeVector, MonoidHom, SharpFsMonoid};
pub use tropcurve::{Cycle, HomologyData, MetricGraph};
