use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;

use crate::pdo::RatMat;
use crate::ring::{rat, DiffPoly, GenId, Mono, Rat, Var};

use super::rho::Reduction;
use super::{Pyramid, WalgError};

/// The W-algebra generators `w_{ij;k}` as polynomials in the `q` variables of `g_{<=1/2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WPresentation {
    pub pyr: Pyramid,
    pub gens: BTreeMap<(u16, u16, u16), DiffPoly>,
}

impl WPresentation {
    pub fn get(&self, i: u16, j: u16, k: u16) -> &DiffPoly {
        &self.gens[&(i, j, k)]
    }

    /// Images of the `W` generators, for substitution.
    pub fn images(&self) -> BTreeMap<GenId, DiffPoly> {
        self.gens.iter().map(|(&(i, j, k), p)| (GenId::W(i, j, k), p.clone())).collect()
    }

    pub fn w_gens(&self) -> Vec<GenId> {
        self.gens.keys().map(|&(i, j, k)| GenId::W(i, j, k)).collect()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolverOptions {
    /// Restrict the ansatz to monomials of the right torus charge.
    pub charge_pruning: bool,
}

impl SolverOptions {
    pub fn pruned() -> Self {
        SolverOptions { charge_pruning: true }
    }
}

struct Atom {
    var: Var,
    weight2: i64,
    charge: Vec<i64>,
    paired: bool,
}

fn atoms(pyr: &Pyramid, max_weight2: i64) -> Vec<Atom> {
    let r = pyr.r() as usize;
    let mut out = Vec::new();
    for (a, b) in pyr.pairs().filter(|&(a, b)| pyr.grade2(a, b) <= 1) {
        let base = pyr.weight2(a, b);
        let mut charge = vec![0; r];
        charge[a.0 as usize - 1] += 1;
        charge[b.0 as usize - 1] -= 1;
        let paired = pyr.paired_index(a, b).is_some();
        let mut ord = 0;
        while base + 2 * ord as i64 <= max_weight2 {
            out.push(Atom {
                var: Var::new(GenId::Q(a, b), ord),
                weight2: base + 2 * ord as i64,
                charge: charge.clone(),
                paired,
            });
            ord += 1;
        }
    }
    out
}

/// Differential monomials of total doubled weight `target` with at least one unpaired factor.
fn ansatz(pyr: &Pyramid, target: i64, charge: Option<&[i64]>) -> Vec<Mono> {
    let atoms = atoms(pyr, target);
    let r = pyr.r() as usize;
    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    fn rec(
        atoms: &[Atom],
        start: usize,
        left: i64,
        stack: &mut Vec<usize>,
        out: &mut Vec<Mono>,
        charge: Option<&[i64]>,
        r: usize,
    ) {
        if left == 0 {
            if stack.iter().all(|&t| atoms[t].paired) {
                return;
            }
            if let Some(want) = charge {
                let mut c = vec![0; r];
                for &t in stack.iter() {
                    for (x, y) in c.iter_mut().zip(&atoms[t].charge) {
                        *x += y;
                    }
                }
                if c != want {
                    return;
                }
            }
            let mut counts: BTreeMap<Var, u32> = BTreeMap::new();
            for &t in stack.iter() {
                *counts.entry(atoms[t].var).or_default() += 1;
            }
            out.push(Mono::from_factors(counts.into_iter().collect()));
            return;
        }
        for t in start..atoms.len() {
            if atoms[t].weight2 <= left {
                stack.push(t);
                rec(atoms, t, left - atoms[t].weight2, stack, out, charge, r);
                stack.pop();
            }
        }
    }
    rec(&atoms, 0, target, &mut stack, &mut out, charge, r);
    out
}

/// A sparse row `Σ coeffs[c] x_c = rhs`.
#[derive(Clone, Debug, Default)]
struct Row {
    coeffs: BTreeMap<usize, Rat>,
    rhs: Rat,
}

impl Row {
    fn sub_scaled(&mut self, other: &Row, c: &Rat) {
        for (&k, v) in &other.coeffs {
            let e = self.coeffs.entry(k).or_insert_with(Rat::zero);
            *e -= v * c;
            if e.is_zero() {
                self.coeffs.remove(&k);
            }
        }
        self.rhs -= &other.rhs * c;
    }
}

/// Exact sparse Gaussian elimination; `Ok(Some(x))` when the solution is unique.
fn solve_sparse(rows: Vec<Row>, unknowns: usize) -> Result<Option<Vec<Rat>>, String> {
    let mut pivots: BTreeMap<usize, Row> = BTreeMap::new();
    for mut row in rows {
        let mut from = 0;
        loop {
            let next = row.coeffs.range(from..).map(|(&k, _)| k).find(|k| pivots.contains_key(k));
            let Some(col) = next else { break };
            let c = row.coeffs[&col].clone();
            row.sub_scaled(&pivots[&col], &c);
            from = col + 1;
        }
        match row.coeffs.keys().next().copied() {
            None if row.rhs.is_zero() => {}
            None => return Err("inconsistent linear system".into()),
            Some(lead) => {
                let inv = row.coeffs[&lead].recip();
                for v in row.coeffs.values_mut() {
                    *v *= &inv;
                }
                row.rhs *= &inv;
                pivots.insert(lead, row);
            }
        }
    }
    if pivots.len() < unknowns {
        return Ok(None);
    }
    let mut x = vec![Rat::zero(); unknowns];
    for (&col, row) in pivots.iter().rev() {
        let mut v = row.rhs.clone();
        for (&k, c) in row.coeffs.range(col + 1..) {
            v -= c * &x[k];
        }
        x[col] = v;
    }
    Ok(Some(x))
}

/// Linear constraints `ρ{a_λ p}_0` for all `a` in `g_{>=1/2}`, keyed by `(a, λ-power, monomial)`.
fn constraints(red: &Reduction, p: &DiffPoly) -> Result<BTreeMap<(GenId, u32, Mono), Rat>, WalgError> {
    let mut out = BTreeMap::new();
    for (a, b) in red.pyr.high_basis() {
        let g = GenId::Q(a, b);
        let v = red.rho_bracket(&DiffPoly::gen(g), p, 0)?;
        for (k, c) in v.coeffs() {
            for (m, x) in c.terms() {
                out.insert((g, k, m.clone()), x.clone());
            }
        }
    }
    Ok(out)
}

/// `f_{ij;k}` as a polynomial in the `q` variables.
pub fn f_poly(pyr: &Pyramid, i: u16, j: u16, k: u16) -> DiffPoly {
    let mut p = DiffPoly::zero();
    for (a, b) in pyr.f_ijk(i, j, k) {
        p += &DiffPoly::gen(GenId::Q(a, b));
    }
    p
}

/// Solves for the unique `w_{ij;k} = f_{ij;k} + (terms with a U^⊥ factor)` in the W-algebra.
pub fn solve_generator(red: &Reduction, i: u16, j: u16, k: u16, opts: SolverOptions) -> Result<DiffPoly, WalgError> {
    let pyr = &red.pyr;
    let fail = |msg: String| WalgError::SolverInconsistent(i, j, k, msg);
    let f = f_poly(pyr, i, j, k);
    let (a, b) = ((i, pyr.part(i) - k), (j, 1));
    let target = pyr.weight2(a, b);
    let charge = opts.charge_pruning.then(|| {
        let mut c = vec![0; pyr.r() as usize];
        c[i as usize - 1] += 1;
        c[j as usize - 1] -= 1;
        c
    });
    let monos = ansatz(pyr, target, charge.as_deref());
    let columns: Result<Vec<_>, WalgError> =
        monos.par_iter().map(|m| constraints(red, &DiffPoly::monomial(rat(1), m.clone()))).collect();
    let columns = columns?;
    let mut rows: BTreeMap<(GenId, u32, Mono), Row> = BTreeMap::new();
    for (c, col) in columns.into_iter().enumerate() {
        for (key, x) in col {
            rows.entry(key).or_default().coeffs.insert(c, x);
        }
    }
    for (key, x) in constraints(red, &f)? {
        rows.entry(key).or_default().rhs = -x;
    }
    let sol = solve_sparse(rows.into_values().collect(), monos.len()).map_err(fail)?;
    let Some(x) = sol else {
        return Err(fail("solution is not unique".into()));
    };
    let mut w = f;
    for (m, c) in monos.into_iter().zip(x) {
        if !c.is_zero() {
            w.add_term(m, c);
        }
    }
    if let Some((g, v)) = red.first_violation(&w)? {
        return Err(fail(format!("membership fails against {}: {}", g, v)));
    }
    for (a, b) in pyr.high_basis() {
        let v = red.rho_bracket(&DiffPoly::gen(GenId::Q(a, b)), &w, 1)?;
        if !v.is_zero() {
            return Err(fail(format!("linear bracket with {} does not vanish: {}", GenId::Q(a, b), v)));
        }
    }
    Ok(w)
}

/// All generators `w_{ij;k}`.
pub fn solve_generators_with(pyr: &Pyramid, opts: SolverOptions) -> Result<WPresentation, WalgError> {
    let s = pyr.s_from_sbar(&RatMat::identity(pyr.r1() as usize))?;
    let red = Reduction::new(pyr, &s);
    let idx = pyr.w_indices();
    let solved: Result<Vec<_>, WalgError> =
        idx.par_iter().map(|&(i, j, k)| Ok(((i, j, k), solve_generator(&red, i, j, k, opts)?))).collect();
    Ok(WPresentation { pyr: pyr.clone(), gens: solved?.into_iter().collect() })
}

/// All generators `w_{ij;k}`, with charge pruning of the ansatz.
pub fn solve_generators(pyr: &Pyramid) -> Result<WPresentation, WalgError> {
    solve_generators_with(pyr, SolverOptions::pruned())
}
