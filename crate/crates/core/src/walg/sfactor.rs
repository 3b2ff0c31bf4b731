use crate::pdo::RatMat;

use super::{Pyramid, WalgError};

/// The top-degree element `S` built from an `r_1 x r_1` matrix `S̄`, with its canonical
/// factorizations `S = I J` and `S̄ = Ī J̄`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SFactorization {
    pub sbar: RatMat,
    pub s: RatMat,
    pub rank: usize,
    pub ibar: RatMat,
    pub jbar: RatMat,
    pub i: RatMat,
    pub j: RatMat,
}

impl SFactorization {
    pub fn new(pyr: &Pyramid, sbar: &RatMat) -> Result<Self, WalgError> {
        let s = pyr.s_from_sbar(sbar)?;
        let (ibar, jbar) = sbar.rank_factorization();
        let i = pyr.i1().mul(&ibar);
        let j = jbar.mul(&pyr.j1());
        Ok(SFactorization { sbar: sbar.clone(), s, rank: ibar.cols, ibar, jbar, i, j })
    }

    /// `S̄ = 1`.
    pub fn identity(pyr: &Pyramid) -> Self {
        Self::new(pyr, &RatMat::identity(pyr.r1() as usize)).expect("identity has the right shape")
    }
}
