use std::collections::BTreeMap;

use crate::pdo::MatPdo;
use crate::report::Report;
use crate::ring::{sign_pow, DiffPoly, GenId};
use crate::walg::{build_l1_from_w, Pyramid};

use super::flows::{evolve_operator, lax_rhs};
use super::HierarchyError;

fn check_shape(pyr: &Pyramid) -> Result<(), HierarchyError> {
    let p1 = pyr.p1();
    if pyr.parts().iter().any(|&p| p != p1 && p != 1) {
        return Err(HierarchyError::WrongPartitionShape(pyr.parts().to_vec()));
    }
    Ok(())
}

/// Image of `L_1` in the quotient by the ideal generated by `w_{ij;0}`, `r_1 < i, j`:
/// `-(-∂)^{p_1} + Σ_k W_{1;k}(-∂)^k - W_2 ∂^{-1} ∘ W_3`.
pub fn constrained_reduction(pyr: &Pyramid, floor: i64) -> Result<MatPdo, HierarchyError> {
    check_shape(pyr)?;
    let r1 = pyr.r1();
    let l1 = build_l1_from_w(pyr, floor)?;
    Ok(l1.map_coeffs(|c| {
        c.substitute_with(|g| match g {
            GenId::W(i, j, 0) if i > r1 && j > r1 => Some(DiffPoly::zero()),
            _ => None,
        })
    }))
}

/// Generators surviving the constrained reduction.
pub fn constrained_gens(pyr: &Pyramid) -> Vec<GenId> {
    let r1 = pyr.r1();
    pyr.w_indices()
        .into_iter()
        .filter(|&(i, j, _)| i <= r1 || j <= r1)
        .map(|(i, j, k)| GenId::W(i, j, k))
        .collect()
}

/// Evolution of the surviving generators under `d L̄/dt_n = [(B^n)_+, L̄]`.
pub fn constrained_flows(pyr: &Pyramid, lbar: &MatPdo, b: &MatPdo, n: u32) -> Result<BTreeMap<GenId, DiffPoly>, HierarchyError> {
    check_shape(pyr)?;
    let (r1, r) = (pyr.r1() as usize, pyr.r() as usize);
    let p = if n == 0 { MatPdo::identity(r1) } else { b.pow_to(n, Some(0)).plus_part() };
    let rhs = lax_rhs(lbar, b, n);
    let mut out = BTreeMap::new();
    for i in 0..r1 {
        for j in 0..r1 {
            for k in 0..pyr.p1() {
                let c = rhs.get(i, j).coeff(k as i64).scale(&sign_pow(k as i64));
                out.insert(GenId::W(j as u16 + 1, i as u16 + 1, k), c);
            }
        }
    }
    let w = |i: usize, j: usize| DiffPoly::gen(GenId::W(i as u16 + 1, j as u16 + 1, 0));
    for a in r1..r {
        for i in 0..r1 {
            // d/dt W_2 = P(W_2), with (W_2)_{ia} = w_{ai;0}
            let mut v = DiffPoly::zero();
            for bb in 0..r1 {
                for (k, c) in p.get(i, bb).coeffs() {
                    v += &(c * &w(a, bb).d_n(k as u32));
                }
            }
            out.insert(GenId::W(a as u16 + 1, i as u16 + 1, 0), v);
            // d/dt W_3 = -Σ (-∂)^k (W_3 P_k), with (W_3)_{ai} = w_{ia;0}
            let mut u = DiffPoly::zero();
            for bb in 0..r1 {
                for (k, c) in p.get(bb, i).coeffs() {
                    let t = (&w(bb, a) * c).d_n(k as u32).scale(&sign_pow(k + 1));
                    u += &t;
                }
            }
            out.insert(GenId::W(i as u16 + 1, a as u16 + 1, 0), u);
        }
    }
    Ok(out)
}

/// The generator flows reproduce `[(B^n)_+, L̄]` on every known coefficient.
pub fn check_constrained_flow(pyr: &Pyramid, lbar: &MatPdo, b: &MatPdo, n: u32) -> Result<Report, HierarchyError> {
    let field = constrained_flows(pyr, lbar, b, n)?;
    let lhs = evolve_operator(lbar, &field);
    let rhs = lax_rhs(lbar, b, n);
    let mut rep = Report::new(format!("constrained flow {}", n));
    let bad = lhs.mismatch(&rhs);
    rep.record(format!("n = {}: generator flows close on L̄", n), bad.is_none(), || {
        let (i, j, d, c) = bad.clone().unwrap();
        format!("entry ({},{}) at ∂^{} differs by {}", i + 1, j + 1, d, c)
    });
    Ok(rep)
}
