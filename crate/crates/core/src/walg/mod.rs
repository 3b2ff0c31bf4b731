//! Structure attached to a nilpotent of `gl_N` given by a partition, and the W-algebra.

mod checks;
mod l1;
mod output;
mod pyramid;
mod rho;
mod sfactor;
mod solver;
mod wbracket;

pub use checks::{
    check_generators, check_inverse_membership, check_l1_adler, check_l1_adler0, check_l1_agreement, check_slice_duality,
    compressed_inverse, RhoBracket,
};
pub use l1::{build_l1_from_q, build_l1_from_w, l1_from_w_in_q, rho_operator, w_entry, w_operator};
pub use output::{generators_latex, generators_text, pencil_json, pencil_latex, pencil_text, presentation_json};
pub use pyramid::{lie_bracket, trace_form, Pyramid};
pub use rho::{membership_test, rho, rho_lambda, rho_map, Reduction};
pub use sfactor::SFactorization;
pub use solver::{f_poly, solve_generator, solve_generators, solve_generators_with, SolverOptions, WPresentation};
pub use wbracket::{check_casimirs, express_in_w, reduction_for, w_bracket, w_pencil};

use thiserror::Error;

use crate::pdo::PdoError;
use crate::pva::PvaError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WalgError {
    #[error("not a partition: {0:?}")]
    BadPartition(Vec<u16>),
    #[error("S-bar must be {expected}x{expected}, got {rows}x{cols}")]
    SbarShape { expected: usize, rows: usize, cols: usize },
    #[error("generator solver found no unique solution for w({0},{1};{2}): {3}")]
    SolverInconsistent(u16, u16, u16, String),
    #[error("bracket result is not in the W-algebra: {0}")]
    NotInImage(String),
    #[error(transparent)]
    Pva(#[from] PvaError),
    #[error(transparent)]
    Pdo(#[from] PdoError),
}
