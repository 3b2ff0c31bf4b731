use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::pdo::{invert, MatPdo, RatMat};
use crate::pva::{check_adler, check_bi_adler, LambdaBracket, LambdaPoly, PvaError};
use crate::report::Report;
use crate::ring::{DiffPoly, GenId};

use super::l1::{build_l1_from_q, l1_from_w_in_q};
use super::rho::Reduction;
use super::sfactor::SFactorization;
use super::solver::WPresentation;
use super::{lie_bracket, trace_form, Pyramid, WalgError};

/// `{f_λ g} = ρ{f_λ g}` on W-algebra elements written in the `q` variables.
pub struct RhoBracket<'a> {
    pub red: &'a Reduction,
    pub which: u8,
}

impl LambdaBracket for RhoBracket<'_> {
    fn bracket(&self, f: &DiffPoly, g: &DiffPoly) -> Result<LambdaPoly, PvaError> {
        self.red.rho_bracket(f, g, self.which)
    }
}

/// Centralizer and slice bases: `[f, f_{ij;k}] = 0` and the trace pairing with the slice basis.
pub fn check_slice_duality(pyr: &Pyramid) -> Report {
    let mut rep = Report::new("slice duality");
    let f = pyr.f();
    let idx = pyr.w_indices();
    let elem = |i: u16, j: u16, k: u16| {
        pyr.f_ijk(i, j, k).into_iter().fold(RatMat::zeros(pyr.n(), pyr.n()), |m, (a, b)| m.add(&pyr.e(a, b)))
    };
    for &(i, j, k) in &idx {
        let fe = elem(i, j, k);
        rep.record(format!("[f, f({},{};{})] = 0", i, j, k), lie_bracket(&f, &fe).is_zero(), || "nonzero".into());
        for &(i2, j2, k2) in &idx {
            let (a, b) = pyr.u_ijk(i, j, k);
            let t = trace_form(&pyr.e(a, b), &elem(i2, j2, k2));
            let want = (i, j, k) == (i2, j2, k2);
            let ok = if want { t.is_one() } else { t.is_zero() };
            if !ok {
                rep.fail(format!("pairing ({},{};{}) ({},{};{})", i, j, k, i2, j2, k2), format!("trace {}", t));
            }
        }
    }
    let dim_u: usize = idx.len();
    let dim_gf = centralizer_dim(pyr);
    rep.record("dim U = dim g^f", dim_u == dim_gf, || format!("{} vs {}", dim_u, dim_gf));
    rep
}

/// `dim g^f`, from the rank of `ad f`.
fn centralizer_dim(pyr: &Pyramid) -> usize {
    let n = pyr.n();
    let f = pyr.f();
    let cols: Vec<RatMat> = pyr.pairs().map(|(a, b)| lie_bracket(&f, &pyr.e(a, b))).collect();
    let mut m = RatMat::zeros(n * n, cols.len());
    for (c, x) in cols.iter().enumerate() {
        for r in 0..n * n {
            m[(r, c)] = x[(r / n, r % n)].clone();
        }
    }
    n * n - m.rank()
}

/// Every generator is ρ-invariant and differs from `f_{ij;k}` by terms with a `U^⊥` factor.
pub fn check_generators(pres: &WPresentation) -> Result<Report, WalgError> {
    let pyr = &pres.pyr;
    let red = Reduction::new(pyr, &RatMat::zeros(pyr.n(), pyr.n()));
    let mut rep = Report::new("generators");
    for (&(i, j, k), w) in &pres.gens {
        let label = format!("w({},{};{})", i, j, k);
        let bad = red.first_violation(w)?;
        rep.record(format!("{} membership", label), bad.is_none(), || {
            let (g, v) = bad.clone().unwrap();
            format!("bracket with {} is {}", g, v)
        });
        let rest = w - &super::solver::f_poly(pyr, i, j, k);
        let stray = rest.terms().find(|(m, _)| {
            m.factors().iter().all(|(v, _)| matches!(v.gen, GenId::Q(a, b) if pyr.paired_index(a, b).is_some()))
        });
        rep.record(format!("{} slice normalization", label), stray.is_none(), || {
            format!("monomial {} has no U-perp factor", DiffPoly::monomial(stray.unwrap().1.clone(), stray.unwrap().0.clone()))
        });
    }
    Ok(rep)
}

/// Coefficients of `L_1^{-1}` lie in the W-algebra, down to the floor of the inverse.
pub fn check_inverse_membership(pyr: &Pyramid, target: i64) -> Result<Report, WalgError> {
    let l1 = build_l1_from_q(pyr, target)?;
    let inv = invert(&l1, target)?;
    let red = Reduction::new(pyr, &RatMat::zeros(pyr.n(), pyr.n()));
    let mut rep = Report::new("L1 inverse membership");
    let (lo, hi) = (inv.floor().unwrap_or(target), inv.order().unwrap_or(0));
    let jobs: Vec<(i64, usize, DiffPoly)> = (lo..=hi)
        .rev()
        .flat_map(|d| inv.coeff(d).into_iter().enumerate().map(move |(e, c)| (d, e, c)))
        .filter(|(_, _, c)| !c.is_zero())
        .collect();
    let results: Result<Vec<_>, WalgError> =
        jobs.par_iter().map(|(d, e, c)| Ok((*d, *e, red.first_violation(c)?))).collect();
    for (d, e, bad) in results? {
        rep.record(format!("degree {} entry {}", d, e), bad.is_none(), || {
            let (g, v) = bad.clone().unwrap();
            format!("bracket with {} is {}", g, v)
        });
    }
    Ok(rep)
}

/// `L_1` from the quasideterminant equals the block formula in the generators.
pub fn check_l1_agreement(pres: &WPresentation, target: i64) -> Result<Report, WalgError> {
    let from_q = build_l1_from_q(&pres.pyr, target)?;
    let from_w = l1_from_w_in_q(pres, target)?;
    let mut rep = Report::new("L1 from q and from w");
    let bad = from_q.mismatch(&from_w);
    rep.record("coefficientwise", bad.is_none(), || {
        let (i, j, d, c) = bad.clone().unwrap();
        format!("entry ({},{}) degree {} differs by {}", i + 1, j + 1, d, c)
    });
    Ok(rep)
}

/// `L_1` is of Adler type for the 0-th bracket and `L_1 + εS̄` of Adler type for the pencil.
pub fn check_l1_adler(pyr: &Pyramid, sf: &SFactorization, target: i64, depth: i64) -> Result<Report, WalgError> {
    let l1 = build_l1_from_q(pyr, target)?;
    let red = Reduction::new(pyr, &sf.s);
    let b0 = RhoBracket { red: &red, which: 0 };
    let b1 = RhoBracket { red: &red, which: 1 };
    let mut rep = Report::new("L1");
    rep.merge(check_bi_adler(&l1, &b0, &b1, &sf.sbar, depth)?);
    Ok(rep)
}

/// The Adler identity for `L_1` alone.
pub fn check_l1_adler0(pyr: &Pyramid, target: i64, depth: i64) -> Result<Report, WalgError> {
    let l1 = build_l1_from_q(pyr, target)?;
    let red = Reduction::new(pyr, &RatMat::zeros(pyr.n(), pyr.n()));
    Ok(check_adler(&l1, &RhoBracket { red: &red, which: 0 }, depth)?)
}

/// `J_1 (1∂ + ρ(Q))^{-1} I_1`, whose expansion starts `(-1)^{p_1-1} ∂^{-p_1}`.
pub fn compressed_inverse(pyr: &Pyramid, target: i64) -> Result<MatPdo, WalgError> {
    let l1 = build_l1_from_q(pyr, target)?;
    Ok(invert(&l1, target)?)
}
