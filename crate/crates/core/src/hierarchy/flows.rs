use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::pdo::MatPdo;
use crate::pva::{check_involution, hamiltonian_flow, is_total_derivative, LambdaBracket};
use crate::report::Report;
use crate::ring::{rat, DiffPoly, GenId};

use super::density::DensityLedger;
use super::HierarchyError;

/// `[(B^n)_+, L]`.
pub fn lax_rhs(l: &MatPdo, b: &MatPdo, n: u32) -> MatPdo {
    let p = if n == 0 { MatPdo::identity(b.rows) } else { b.pow_to(n, Some(0)).plus_part() };
    p.mul(l).sub(&l.mul(&p))
}

/// The Hamiltonian vector field `u ↦ {∫h, u}` on the given generators.
pub fn flow_field<B: LambdaBracket + ?Sized>(
    br: &B,
    h: &DiffPoly,
    gens: &[GenId],
) -> Result<BTreeMap<GenId, DiffPoly>, HierarchyError> {
    let vals: Result<Vec<_>, HierarchyError> =
        gens.par_iter().map(|&g| Ok((g, hamiltonian_flow(br, h, g)?))).collect();
    Ok(vals?.into_iter().collect())
}

/// The evolutionary derivation with characteristic `field`, applied to `c`.
pub fn evolve(c: &DiffPoly, field: &BTreeMap<GenId, DiffPoly>) -> DiffPoly {
    let mut out = DiffPoly::zero();
    for v in c.vars() {
        if let Some(x) = field.get(&v.gen) {
            out += &(&c.partial(v) * &x.d_n(v.ord));
        }
    }
    out
}

/// `dL/dt` for the derivation with characteristic `field`, coefficientwise.
pub fn evolve_operator(l: &MatPdo, field: &BTreeMap<GenId, DiffPoly>) -> MatPdo {
    l.map_coeffs(|c| evolve(c, field))
}

fn record_agreement(rep: &mut Report, label: String, lhs: &MatPdo, rhs: &MatPdo) {
    let bad = lhs.mismatch(rhs);
    rep.record(label, bad.is_none(), || {
        let (i, j, d, c) = bad.clone().unwrap();
        format!("entry ({},{}) at ∂^{} differs by {}", i + 1, j + 1, d, c)
    });
}

/// The flow `{∫h_n, L}_0`, computed through the Hamiltonian vector field, against `[(B^n)_+, L]`.
pub fn check_flow<B: LambdaBracket + ?Sized>(
    l: &MatPdo,
    ledger: &DensityLedger,
    br0: &B,
    gens: &[GenId],
    n: u32,
) -> Result<Report, HierarchyError> {
    let mut rep = Report::new(format!("flow {}", n));
    let field = flow_field(br0, &ledger.get(n), gens)?;
    let ham = evolve_operator(l, &field);
    let lax = lax_rhs(l, &ledger.root, n);
    record_agreement(&mut rep, format!("n = {}: Hamiltonian and Lax forms", n), &ham, &lax);
    Ok(rep)
}

/// `{∫h_n, L}_0 = σ{∫h_{n+K}, L}_1 = [(B^n)_+, L]` on every coefficient of `L`.
pub fn check_lenard_magri<B0: LambdaBracket + ?Sized, B1: LambdaBracket + ?Sized>(
    l: &MatPdo,
    ledger: &DensityLedger,
    br0: &B0,
    br1: &B1,
    sigma: i64,
    gens: &[GenId],
    n: u32,
) -> Result<Report, HierarchyError> {
    let k = ledger.k;
    let mut rep = Report::new(format!("Lenard-Magri {}", n));
    let f0 = flow_field(br0, &ledger.get(n), gens)?;
    let f1: BTreeMap<GenId, DiffPoly> =
        flow_field(br1, &ledger.get(n + k), gens)?.into_iter().map(|(g, p)| (g, p.scale(&rat(sigma)))).collect();
    let lhs = evolve_operator(l, &f0);
    let mid = evolve_operator(l, &f1);
    let lax = lax_rhs(l, &ledger.root, n);
    record_agreement(&mut rep, format!("n = {}: bracket 0 vs bracket 1 at n + {}", n, k), &lhs, &mid);
    record_agreement(&mut rep, format!("n = {}: bracket 1 at n + {} vs Lax", n, k), &mid, &lax);
    Ok(rep)
}

/// Pairwise involution of all stored densities under both brackets.
pub fn involution_suite<B0: LambdaBracket + ?Sized, B1: LambdaBracket + ?Sized>(
    ledger: &DensityLedger,
    br0: &B0,
    br1: &B1,
) -> Result<Report, HierarchyError> {
    let mut rep = Report::new("involution");
    let ns: Vec<u32> = ledger.densities.keys().copied().filter(|&n| n > 0).collect();
    let pairs: Vec<(u32, u32)> = ns.iter().flat_map(|&m| ns.iter().filter(move |&&n| n >= m).map(move |&n| (m, n))).collect();
    let results: Result<Vec<_>, HierarchyError> = pairs
        .par_iter()
        .map(|&(m, n)| {
            let (hm, hn) = (ledger.get(m), ledger.get(n));
            Ok((m, n, check_involution(br0, &hm, &hn)?, check_involution(br1, &hm, &hn)?))
        })
        .collect();
    for (m, n, a, b) in results? {
        rep.record(format!("h{} h{} bracket 0", m, n), a, || "bracket is not a total derivative".into());
        rep.record(format!("h{} h{} bracket 1", m, n), b, || "bracket is not a total derivative".into());
    }
    Ok(rep)
}

/// `h_n` has a nonzero variational derivative.
pub fn is_nontrivial(h: &DiffPoly) -> bool {
    !is_total_derivative(h)
}
