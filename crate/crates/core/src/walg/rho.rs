use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::pva::{affine_pencil_any, BracketTable, LambdaPoly, PvaError};
use crate::pdo::RatMat;
use crate::ring::{DiffPoly, GenId};

use super::{Pyramid, WalgError};

/// The homomorphism `ρ(a) = π_{<=1/2}(a) + (f|a)` on the generators `q_{ab}`.
pub fn rho_map(pyr: &Pyramid) -> BTreeMap<GenId, DiffPoly> {
    let f = pyr.f();
    pyr.pairs()
        .map(|(a, b)| {
            let img = if pyr.grade2(a, b) <= 1 {
                DiffPoly::gen(GenId::Q(a, b))
            } else {
                DiffPoly::constant(f[(pyr.idx(b), pyr.idx(a))].clone())
            };
            (GenId::Q(a, b), img)
        })
        .collect()
}

/// Applies `ρ` to a polynomial in the `q` variables.
pub fn rho(images: &BTreeMap<GenId, DiffPoly>, p: &DiffPoly) -> DiffPoly {
    p.substitute_some(images)
}

/// Applies `ρ` coefficientwise to a λ-polynomial.
pub fn rho_lambda(images: &BTreeMap<GenId, DiffPoly>, p: &LambdaPoly) -> LambdaPoly {
    p.map(|c| rho(images, c))
}

/// Everything needed to evaluate `ρ{a_λ w}` on a fixed pyramid.
pub struct Reduction {
    pub pyr: Pyramid,
    pub images: BTreeMap<GenId, DiffPoly>,
    pub bracket0: BracketTable,
    pub bracket1: BracketTable,
}

impl Reduction {
    /// Uses the affine pencil with the given `S` for the linear part.
    pub fn new(pyr: &Pyramid, s: &RatMat) -> Self {
        let pencil = affine_pencil_any(pyr, s);
        Reduction { pyr: pyr.clone(), images: rho_map(pyr), bracket0: pencil.bracket0, bracket1: pencil.bracket1 }
    }

    /// `ρ{a_λ w}` for the 0-th (`which = 0`) or linear (`which = 1`) bracket.
    pub fn rho_bracket(&self, f: &DiffPoly, g: &DiffPoly, which: u8) -> Result<LambdaPoly, PvaError> {
        let br = if which == 0 { &self.bracket0 } else { &self.bracket1 };
        Ok(rho_lambda(&self.images, &br.extend(f, g)?))
    }

    /// `ρ{a_λ w}_0 = 0` for every basis element `a` of `g_{>=1/2}`.
    pub fn is_member(&self, w: &DiffPoly) -> Result<bool, WalgError> {
        Ok(self.first_violation(w)?.is_none())
    }

    /// A basis element `a` of `g_{>=1/2}` with `ρ{a_λ w}_0 != 0`, with the offending value.
    pub fn first_violation(&self, w: &DiffPoly) -> Result<Option<(GenId, LambdaPoly)>, WalgError> {
        let high = self.pyr.high_basis();
        let found: Result<Vec<_>, WalgError> = high
            .par_iter()
            .map(|&(a, b)| {
                let g = GenId::Q(a, b);
                let v = self.rho_bracket(&DiffPoly::gen(g), w, 0)?;
                Ok((!v.is_zero()).then_some((g, v)))
            })
            .collect();
        Ok(found?.into_iter().flatten().next())
    }
}

/// Membership of `w` in the W-algebra.
pub fn membership_test(w: &DiffPoly, pyr: &Pyramid) -> Result<bool, WalgError> {
    Reduction::new(pyr, &RatMat::zeros(pyr.n(), pyr.n())).is_member(w)
}
