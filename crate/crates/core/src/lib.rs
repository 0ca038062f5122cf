//! Certified hyperbolic-geometry engine for curve-complex distance bounds of
//! point-pushing maps on surfaces.
//!
//! The library builds cocompact and cofinite surface-group representations
//! from regular polygon side pairings, decides word/conjugacy problems
//! combinatorially, certifies boundary-circle predicates with outward-rounded
//! dyadic interval arithmetic backed by exact symbolic entries, and assembles
//! these into distance certificates: adjacency chains (upper bounds), level
//! frames and induction checks (lower bounds), and a brute-force search oracle
//! for cross-validation.
//!
//! Numeric results are never trusted to decide equality: equalities are
//! decided by exact word combinatorics or the exact scalar ring; intervals
//! only certify strict separations, with automatic precision refinement.

pub mod curves;
pub mod exact;
pub mod geom;
pub mod group;
pub mod pushing;
pub mod regions;
pub mod report;
pub mod scalar;
