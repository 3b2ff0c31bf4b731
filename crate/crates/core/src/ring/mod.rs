//! Exact rationals and the algebra of differential polynomials.
//!
//! A [`DiffPoly`] is a polynomial over `Q` in commuting variables `u^{(n)}`, one for each
//! generator `u` and derivative order `n`, with the derivation `d` raising orders.

mod gen;
mod json;
mod poly;
mod rat;

pub use gen::{Cell, GenId, Var};
pub use json::{gen_from_json, gen_to_json, rat_from_json, rat_to_json};
pub use poly::{DiffMonomial, DiffPoly, Mono, Weight};
pub use rat::{binom, fmt_rat, is_integer, rat, ratio, sign_pow, to_small, Rat};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("no image assigned to generator {0}")]
    MissingImage(GenId),
    #[error("malformed polynomial JSON: {0}")]
    Json(String),
}
