use crate::pdo::{invert, quasideterminant, MatPdo, Pdo};
use crate::pva::affine_operator;
use crate::ring::{DiffPoly, GenId};

use super::rho::{rho, rho_map};
use super::solver::WPresentation;
use super::{Pyramid, WalgError};

/// `ρ(1∂ + Q)`.
pub fn rho_operator(pyr: &Pyramid) -> MatPdo {
    let images = rho_map(pyr);
    affine_operator(pyr).map_coeffs(|c| rho(&images, c))
}

/// `L_1 = |ρ(1∂ + Q)|_{I_1 J_1}` over the `q` variables.
pub fn build_l1_from_q(pyr: &Pyramid, target: i64) -> Result<MatPdo, WalgError> {
    Ok(quasideterminant(&rho_operator(pyr), &pyr.i1(), &pyr.j1(), target)?)
}

/// `W_{ij}(∂) = Σ_k w_{ij;k} (-∂)^k`.
pub fn w_entry(pyr: &Pyramid, i: u16, j: u16) -> Pdo {
    let mut p = Pdo::zero();
    for k in 0..pyr.part(i).min(pyr.part(j)) {
        p = p.add(&Pdo::neg_d_pow(k as i64).lmul(&DiffPoly::gen(GenId::W(i, j, k))));
    }
    p
}

/// `-(-∂)^p + W(∂)` with `W(∂) = Σ W_{ij}(∂) E_{ji}`, an `r x r` operator in the `w` variables.
pub fn w_operator(pyr: &Pyramid) -> MatPdo {
    let r = pyr.r() as usize;
    let mut entries = Vec::with_capacity(r * r);
    for a in 1..=r as u16 {
        for b in 1..=r as u16 {
            let mut e = w_entry(pyr, b, a);
            if a == b {
                e = e.sub(&Pdo::neg_d_pow(pyr.part(a) as i64));
            }
            entries.push(e);
        }
    }
    MatPdo::from_entries(r, r, entries)
}

/// `L_1 = -1(-∂)^{p_1} + W_1 - W_2 (-(-∂)^q + W_4)^{-1} W_3` over the `w` variables.
pub fn build_l1_from_w(pyr: &Pyramid, target: i64) -> Result<MatPdo, WalgError> {
    let m = w_operator(pyr);
    let (r, r1) = (pyr.r() as usize, pyr.r1() as usize);
    let top = m.block(0, r1, 0, r1);
    if r == r1 {
        return Ok(top);
    }
    let m12 = m.block(0, r1, r1, r);
    let m21 = m.block(r1, r, 0, r1);
    let m22 = m.block(r1, r, r1, r);
    let inv = invert(&m22, target - 2 * pyr.p1() as i64)?;
    let corr = m12.mul_to(&inv, Some(target)).mul_to(&m21, Some(target));
    Ok(top.sub(&corr).with_floor(target))
}

/// `L_1` from the generators, with the `w` variables replaced by their `q` expressions.
pub fn l1_from_w_in_q(pres: &WPresentation, target: i64) -> Result<MatPdo, WalgError> {
    let images = pres.images();
    Ok(build_l1_from_w(&pres.pyr, target)?.map_coeffs(|c| c.substitute_some(&images)))
}
