use rayon::prelude::*;

use crate::pva::{BracketPencil, BracketTable, LambdaPoly};
use crate::report::Report;
use crate::ring::{DiffPoly, GenId};

use super::rho::Reduction;
use super::sfactor::SFactorization;
use super::solver::WPresentation;
use super::WalgError;

/// Rewrites a polynomial in the `q` variables of `g_{<=1/2}` through the generators `w_{ij;k}`.
///
/// Paired variables go to their generator and all others to zero; the result is then
/// substituted back and compared with the input.
pub fn express_in_w(pres: &WPresentation, p: &DiffPoly) -> Result<DiffPoly, WalgError> {
    let pyr = &pres.pyr;
    let projected = p.substitute_with(|g| match g {
        GenId::Q(a, b) => Some(match pyr.paired_index(a, b) {
            Some((i, j, k)) => DiffPoly::gen(GenId::W(i, j, k)),
            None => DiffPoly::zero(),
        }),
        _ => None,
    });
    let back = projected.substitute_some(&pres.images());
    if &back != p {
        return Err(WalgError::NotInImage(format!("{} (reconstructed as {})", p, back)));
    }
    Ok(projected)
}

/// `{v_λ u}^W = ρ{v_λ u}` for polynomials `v`, `u` in the `w` variables; `which` selects the
/// 0-th or linear part of the pencil. The result is expressed in the `w` variables.
pub fn w_bracket(
    pres: &WPresentation,
    red: &Reduction,
    v: &DiffPoly,
    u: &DiffPoly,
    which: u8,
) -> Result<LambdaPoly, WalgError> {
    let images = pres.images();
    let vq = v.substitute_some(&images);
    let uq = u.substitute_some(&images);
    let raw = red.rho_bracket(&vq, &uq, which)?;
    let mut out = LambdaPoly::zero();
    for (k, c) in raw.coeffs() {
        out.add_coeff(k, &express_in_w(pres, c)?);
    }
    Ok(out)
}

/// Reduction data for the pencil with the given `S`.
pub fn reduction_for(pres: &WPresentation, sf: &SFactorization) -> Reduction {
    Reduction::new(&pres.pyr, &sf.s)
}

/// Both W-algebra brackets on the generators `w_{ij;k}`.
pub fn w_pencil(pres: &WPresentation, sf: &SFactorization) -> Result<BracketPencil, WalgError> {
    let red = reduction_for(pres, sf);
    let gens = pres.w_gens();
    let pairs: Vec<(GenId, GenId)> = gens.iter().flat_map(|&a| gens.iter().map(move |&b| (a, b))).collect();
    let vals: Result<Vec<_>, WalgError> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let (fa, fb) = (DiffPoly::gen(a), DiffPoly::gen(b));
            Ok((a, b, w_bracket(pres, &red, &fa, &fb, 0)?, w_bracket(pres, &red, &fa, &fb, 1)?))
        })
        .collect();
    let mut b0 = BracketTable::new(gens.iter().copied());
    let mut b1 = BracketTable::new(gens.iter().copied());
    for (a, b, v0, v1) in vals? {
        b0.set(a, b, v0);
        b1.set(a, b, v1);
    }
    Ok(BracketPencil { bracket0: b0, bracket1: b1 })
}

/// Centrality of `w_{ij;p_i-1}` (`p_i = p_j`) for the linear bracket.
pub fn check_casimirs(pres: &WPresentation, table1: &BracketTable) -> Result<Report, WalgError> {
    let pyr = &pres.pyr;
    let mut rep = Report::new("casimirs");
    let gens = pres.w_gens();
    for i in 1..=pyr.r() {
        for j in 1..=pyr.r() {
            if pyr.part(i) != pyr.part(j) {
                continue;
            }
            let c = GenId::W(i, j, pyr.part(i) - 1);
            for &g in &gens {
                let v = table1.extend(&DiffPoly::gen(c), &DiffPoly::gen(g))?;
                rep.record(format!("{} {}", c, g), v.is_zero(), || format!("bracket {}", v));
            }
        }
    }
    Ok(rep)
}
