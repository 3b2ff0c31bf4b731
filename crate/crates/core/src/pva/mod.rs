//! λ-brackets on differential algebras: the affine pencil on `gl_N`, the master-formula
//! extension from generators, the PVA axioms, Adler-type identities and variational calculus.

mod adler;
mod affine;
mod bracket;
mod checks;
mod lambda;

pub use adler::{check_adler, check_adler_linear, check_bi_adler, check_inverse_adler, check_mixed_inverse, Region};
pub use affine::{affine_operator, affine_pencil, affine_pencil_any, q_matrix};
pub use bracket::{BracketPencil, BracketTable, LambdaBracket, Negated};
pub use checks::{
    check_involution, check_jacobi, check_sesquilinearity, check_skew, generators_of, hamiltonian_flow,
    is_total_derivative, variational_derivative,
};
pub use lambda::{Lambda2, LambdaPoly};

use thiserror::Error;

use crate::pdo::PdoError;
use crate::ring::{GenId, RingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PvaError {
    #[error("no bracket entry for the pair ({0}, {1})")]
    MissingEntry(GenId, GenId),
    #[error("S is not in the top degree of the grading")]
    SNotTopDegree,
    #[error(transparent)]
    Pdo(#[from] PdoError),
    #[error(transparent)]
    Ring(#[from] RingError),
}
