use crate::pdo::{MatPdo, Pdo, RatMat};
use crate::ring::{DiffPoly, GenId};
use crate::walg::Pyramid;

use super::bracket::{BracketPencil, BracketTable};
use super::lambda::LambdaPoly;
use super::PvaError;

/// The affine pencil on `V(gl_N)`: `{a_λ b}_ε = [a,b] + tr(ab)λ + ε tr(S[a,b])`.
pub fn affine_pencil(pyr: &Pyramid, s: &RatMat) -> Result<BracketPencil, PvaError> {
    if !pyr.in_top_degree(s) {
        return Err(PvaError::SNotTopDegree);
    }
    Ok(affine_pencil_any(pyr, s))
}

/// As [`affine_pencil`], for an arbitrary matrix `S`.
pub fn affine_pencil_any(pyr: &Pyramid, s: &RatMat) -> BracketPencil {
    let gens = pyr.all_vars();
    let mut b0 = BracketTable::new(gens.iter().copied());
    let mut b1 = BracketTable::new(gens.iter().copied());
    for (a, b) in pyr.pairs() {
        for (c, d) in pyr.pairs() {
            // [E_ab, E_cd] = δ_bc E_ad - δ_da E_cb
            let mut v0 = LambdaPoly::zero();
            let mut v1 = DiffPoly::zero();
            if b == c {
                v0.add_coeff(0, &DiffPoly::gen(GenId::Q(a, d)));
                v1 += &DiffPoly::constant(s[(pyr.idx(d), pyr.idx(a))].clone());
            }
            if d == a {
                v0.add_coeff(0, &-DiffPoly::gen(GenId::Q(c, b)));
                v1 -= &DiffPoly::constant(s[(pyr.idx(b), pyr.idx(c))].clone());
            }
            if b == c && a == d {
                v0.add_coeff(1, &DiffPoly::one());
            }
            b0.set(GenId::Q(a, b), GenId::Q(c, d), v0);
            b1.set(GenId::Q(a, b), GenId::Q(c, d), LambdaPoly::constant(v1));
        }
    }
    BracketPencil { bracket0: b0, bracket1: b1 }
}

/// `Q` with entry `q_{ji}` in position `(i, j)`.
pub fn q_matrix(pyr: &Pyramid) -> MatPdo {
    let n = pyr.n();
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            entries.push(Pdo::constant(DiffPoly::gen(GenId::Q(pyr.cell(j), pyr.cell(i)))));
        }
    }
    MatPdo::from_entries(n, n, entries)
}

/// `A(∂) = 1 ∂ + Q`.
pub fn affine_operator(pyr: &Pyramid) -> MatPdo {
    MatPdo::identity(pyr.n()).map(|e| e.mul(&Pdo::d_pow(1))).add(&q_matrix(pyr))
}
