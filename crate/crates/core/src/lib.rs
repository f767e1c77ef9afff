//! Exact invariant arithmetic for Spin(7) and Calabi-Yau 8-manifolds glued from
//! weighted complete intersections.
//!
//! The modules build on each other bottom-up:
//!
//! - [`cayley`]: exterior algebra on ℝ⁸ and the Cayley 4-form Φ₀
//! - [`wps`]: weighted projective space combinatorics
//! - [`series`]: Hilbert series of complete intersections
//! - [`cohomology`]: Hodge diamonds, Betti numbers and signatures
//! - [`chern`]: Euler characteristics from Chern classes and branched covers
//! - [`pipeline`]: the blow-up / quotient / glue / resolve invariant chain

pub mod cayley;
pub mod wps;
pub mod series;
pub mod chern;
pub mod cohomology;
pub mod pipeline;
mod linalg;

pub use linalg::rank_bareiss;
