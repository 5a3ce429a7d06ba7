//! Polyhedral cones, the positive cone, and the assembly of the Mori cone,
//! nef cone, exceptional reflections and movable-cone chambers.
//!
//! Cones of divisors and curves live in the coordinates of the saturated
//! basis of `H²(X)_alg` returned by
//! [`ExtendedAlgebraicLattice::h2_alg_basis`](crate::ExtendedAlgebraicLattice::h2_alg_basis),
//! curves being identified with divisors through the Beauville–Bogomolov form.

pub mod chambers;
pub mod mori;
pub mod polyhedral;
pub mod positive;
pub mod weyl;

pub use chambers::{
    movable_chambers, Chamber, MovableDecomposition, Wall, WallKind, DEFAULT_WORD_BOUND,
    MAX_CHAMBER_RANK,
};
pub use mori::{dual_cone, mori_cone, nef_cone, ConeDescription, NefCone};
pub use polyhedral::RationalCone;
pub use positive::PositiveCone;
pub use weyl::{exceptional_candidates, reflection, Reflection};
