//! Exact rational linear algebra and polyhedral primitives.
//!
//! Everything here is tolerance-free: membership, position, closest-point
//! and crossing computations run over arbitrary-precision rationals and
//! return certificates that re-verify by exact substitution. All values are
//! immutable and all functions are pure, so sharing across threads is safe.

mod closest;
mod fm;
mod hull;
mod lattice;
pub mod lp;
mod metric;
pub mod rational;
pub mod vecops;

pub use closest::closest_point;
pub use hull::{affine_dimension, hull_contains, hull_position, ray_boundary_crossings};
pub use hull::{HullCertificate, Position};
pub use lattice::lattice_box;
pub use lp::{feasible_point, solve, Constraint, LpOutcome, Rel, Sense};
pub use metric::InnerProduct;
pub use rational::{format_rat, parse_rat, rat, rat_i, Rat};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeomError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("empty point set")]
    EmptyPoints,
    #[error("inner product matrix is not symmetric")]
    NotSymmetric,
    #[error("inner product matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("invalid rational literal {0:?}")]
    BadRational(String),
}
