//! Mori cones, nef cones and movable-cone chamber decompositions of
//! hyperkähler varieties of K3^[n] type, computed exactly from the algebraic
//! part of the extended Mukai lattice.

pub mod cli;
pub mod cone;
pub mod enumeration;
pub mod error;
pub mod lattice;
pub mod linalg;
pub mod markman;
pub mod pell;
pub mod shortvec;

pub use cone::{ConeDescription, NefCone, RationalCone};
pub use enumeration::{EnumerationBudget, TheoremClass};
pub use error::{MorikitError, Result};
pub use lattice::{Lattice, LatticeVector, StandardLattice};
pub use markman::{CurveClass, DivisorClass, ExtendedAlgebraicLattice};
