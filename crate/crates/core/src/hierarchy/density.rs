use std::collections::BTreeMap;

use num_traits::Zero;

use crate::pdo::{kth_root, MatPdo};
use crate::ring::{rat, DiffPoly, GenId, Mono, Rat, Var};

use super::HierarchyError;

/// Hamiltonian densities `h_n = -(K/n) Res tr B^n`, `B^K = σL`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityLedger {
    pub k: u32,
    pub root: MatPdo,
    /// Densities as computed.
    pub raw: BTreeMap<u32, DiffPoly>,
    /// Canonical representatives modulo total derivatives.
    pub densities: BTreeMap<u32, DiffPoly>,
}

impl DensityLedger {
    pub fn get(&self, n: u32) -> DiffPoly {
        self.densities.get(&n).cloned().unwrap_or_else(DiffPoly::zero)
    }

    /// The total derivative dropped by normalization.
    pub fn exact_part(&self, n: u32) -> DiffPoly {
        match (self.raw.get(&n), self.densities.get(&n)) {
            (Some(r), Some(d)) => r - d,
            _ => DiffPoly::zero(),
        }
    }
}

/// Floor of `σL` that determines `h_1, …, h_{n_max}` for an operator of the given order.
pub fn required_floor(order: i64, k: u32, n_max: u32) -> i64 {
    let m = order / k as i64;
    order - 1 - n_max as i64 * m
}

/// `B` with `B^K = a`: `a` itself for `K = 1`, otherwise the root with identity leading coefficient.
pub fn root(a: &MatPdo, k: u32, floor: i64) -> Result<MatPdo, HierarchyError> {
    if k == 1 {
        return Ok(a.clone());
    }
    let order = a.order().unwrap_or(0);
    Ok(kth_root(a, k, floor - order + order / k as i64)?)
}

/// Densities `h_1, …, h_{n_max}` of the operator `a = σL`.
pub fn densities(a: &MatPdo, k: u32, n_max: u32, floor: i64) -> Result<DensityLedger, HierarchyError> {
    if k == 0 {
        return Err(HierarchyError::BadRootOrder(0));
    }
    let b = root(a, k, floor)?;
    let mut raw = BTreeMap::new();
    let mut normalized = BTreeMap::new();
    raw.insert(0, DiffPoly::zero());
    normalized.insert(0, DiffPoly::zero());
    for n in 1..=n_max {
        let power = b.pow_to(n, Some(-1));
        let res = power.trace().residue()?;
        let h = res.scale(&Rat::new((-(k as i64)).into(), (n as i64).into()));
        normalized.insert(n, normalize_density(&h));
        raw.insert(n, h);
    }
    Ok(DensityLedger { k, root: b, raw, densities: normalized })
}

type Shape = (Vec<(GenId, u32)>, u32);

fn shape(m: &Mono) -> Shape {
    let mut gens: BTreeMap<GenId, u32> = BTreeMap::new();
    let mut ord = 0;
    for &(v, e) in m.factors() {
        *gens.entry(v.gen).or_default() += e;
        ord += v.ord * e;
    }
    (gens.into_iter().collect(), ord)
}

/// All monomials with the given multiset of generators and total derivative order.
fn monomials_of_shape(gens: &[(GenId, u32)], ord: u32) -> Vec<Mono> {
    // for each generator: a non-increasing list of orders of its copies
    fn parts(count: u32, total: u32, max: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if count == 0 {
            if total == 0 {
                out.push(acc.clone());
            }
            return;
        }
        for o in (0..=max.min(total)).rev() {
            acc.push(o);
            parts(count - 1, total - o, o, acc, out);
            acc.pop();
        }
    }
    fn rec(gens: &[(GenId, u32)], left: u32, acc: &mut Vec<(Var, u32)>, out: &mut Vec<Mono>) {
        let Some((&(g, c), rest)) = gens.split_first() else {
            if left == 0 {
                out.push(Mono::from_factors(acc.clone()));
            }
            return;
        };
        for t in 0..=left {
            let mut ps = Vec::new();
            parts(c, t, t, &mut Vec::new(), &mut ps);
            for p in ps {
                let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
                for o in p {
                    *counts.entry(o).or_default() += 1;
                }
                let n = acc.len();
                acc.extend(counts.into_iter().map(|(o, e)| (Var::new(g, o), e)));
                rec(rest, left - t, acc, out);
                acc.truncate(n);
            }
        }
    }
    let mut out = Vec::new();
    rec(gens, ord, &mut Vec::new(), &mut out);
    out
}

/// Canonical representative of `h` modulo total derivatives: each homogeneous piece is reduced
/// against an echelon basis of the image of `∂`, pivoting on the largest monomial.
pub fn normalize_density(h: &DiffPoly) -> DiffPoly {
    let mut groups: BTreeMap<Shape, DiffPoly> = BTreeMap::new();
    for (m, c) in h.terms() {
        groups.entry(shape(m)).or_insert_with(DiffPoly::zero).add_term(m.clone(), c.clone());
    }
    let mut out = DiffPoly::zero();
    for ((gens, ord), part) in groups {
        if ord == 0 || gens.is_empty() {
            out += &part;
            continue;
        }
        let mut basis: BTreeMap<Mono, DiffPoly> = BTreeMap::new();
        for m in monomials_of_shape(&gens, ord - 1) {
            let mut v = DiffPoly::monomial(rat(1), m).d();
            reduce(&mut v, &basis);
            if let Some((lead, c)) = v.terms().last().map(|(m, c)| (m.clone(), c.clone())) {
                basis.insert(lead, v.scale(&c.recip()));
            }
        }
        let mut r = part;
        reduce(&mut r, &basis);
        out += &r;
    }
    out
}

fn reduce(v: &mut DiffPoly, basis: &BTreeMap<Mono, DiffPoly>) {
    loop {
        let hit = v.terms().filter(|(m, _)| basis.contains_key(*m)).last().map(|(m, c)| (m.clone(), c.clone()));
        let Some((m, c)) = hit else { return };
        v.add_scaled(&basis[&m], &-c);
        debug_assert!(v.coeff(&m).is_zero());
    }
}
