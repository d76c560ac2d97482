//! Exact Schubert calculus on one-parameter persistence diagrams.
//!
//! Modules, bottom up:
//!
//! * [`perm`]: permutations with S_∞ semantics, Bruhat order, Lehmer codes.
//! * [`poly`]: sparse integer polynomials and divided differences.
//! * [`schubert`]: Schubert polynomials, Monk products, general products and
//!   their two independent cross-checks.
//! * [`persistence`]: presentation matrices on a birth/death grid, reduction
//!   to a Schubert cell, interval decomposition and a rank-invariant oracle.
//! * [`diagram`]: the product of persistence diagrams and barcode rendering.
//! * [`verify`]: the invariant suites run by `schubert verify`.

pub mod diagram;
pub mod json;
pub mod linalg;
pub mod perm;
pub mod persistence;
pub mod poly;
pub mod schubert;
pub mod verify;

pub use diagram::{DiagramClass, DiagramSum};
pub use perm::Permutation;
pub use persistence::{BirthDeathGrid, PersistenceDiagram, PresentationMatrix};
pub use poly::{Monomial, Polynomial};
pub use schubert::{FormalSum, Mode};
