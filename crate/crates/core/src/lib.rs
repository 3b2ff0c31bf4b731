//! Exact symbolic computation of classical affine W-algebras of `gl_N`.
//!
//! The crate builds the W-algebra attached to a nilpotent element (given by a partition of `N`)
//! from matrix pseudodifferential operators of Adler type and generalized quasideterminants,
//! and derives the associated bi-Hamiltonian Lax hierarchies.

pub mod hierarchy;
pub mod pdo;
pub mod pva;
pub mod report;
pub mod ring;
pub mod walg;
