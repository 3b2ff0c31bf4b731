use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::pdo::{adjoint_symbol, invert, symbol_w, MatPdo, Pdo, RatMat, Sym3, Window};
use crate::report::Report;

use super::bracket::{LambdaBracket, Negated};
use super::PvaError;

/// Set of `(z, w)` exponents on which both sides of an Adler-type identity are fully known.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Region {
    pub zmin: i64,
    pub wmin: i64,
    pub summin: Option<i64>,
}

impl Region {
    /// Region for brackets between coefficients of `a` (giving `z`) and of `b` (giving `w`).
    pub fn for_pair(a: &MatPdo, b: &MatPdo, depth: i64) -> Region {
        let zmin = a.floor().map_or(depth, |f| f.max(depth));
        let wmin = b.floor().map_or(depth, |f| f.max(depth));
        let summin = match (a.floor(), b.floor()) {
            (None, None) => None,
            (fa, fb) => {
                let f = fa.unwrap_or(i64::MIN / 4).max(fb.unwrap_or(i64::MIN / 4));
                let ord = a.order().unwrap_or(0).max(b.order().unwrap_or(0));
                Some(f + ord - 1)
            }
        };
        Region { zmin, wmin, summin }
    }

    pub fn contains(&self, z: i64, w: i64) -> bool {
        z >= self.zmin && w >= self.wmin && self.summin.is_none_or(|s| z + w >= s)
    }

    fn window(&self) -> Window {
        Window { zmin: self.zmin, wmin: self.wmin }
    }
}

/// `Σ_n a_n Σ_{l≥0} z^{-l-1} (w+λ+∂)^{n+l} X`, with `a_n` the coefficients of `left`
/// (`left = None` stands for the constant 1).
fn shifted_left(left: Option<&Pdo>, x: &Sym3, reg: Region) -> Sym3 {
    let win = reg.window();
    let one = Pdo::one();
    let left = left.unwrap_or(&one);
    let zx_max = x.terms().map(|(&(z, _, _), _)| z).max();
    let Some(zx_max) = zx_max else { return Sym3::zero() };
    let lmax = zx_max - 1 - reg.zmin;
    if lmax < 0 {
        return Sym3::zero();
    }
    let mut cache: BTreeMap<i64, Sym3> = BTreeMap::new();
    let mut out = Sym3::zero();
    for l in 0..=lmax {
        for (n, a) in left.coeffs() {
            let s = n + l;
            let y = cache.entry(s).or_insert_with(|| x.shift_apply(s, win));
            out.add_assign(&y.lmul(a, -l - 1, win));
        }
    }
    out
}

/// `Σ_n a_n z^n Σ_{l≥0} z^{-l-1} (w+λ+∂)^l X`.
fn plain_left(left: Option<&Pdo>, x: &Sym3, reg: Region) -> Sym3 {
    let win = reg.window();
    let one = Pdo::one();
    let left = left.unwrap_or(&one);
    let zx_max = x.terms().map(|(&(z, _, _), _)| z).max();
    let (Some(zx_max), Some(nmax)) = (zx_max, left.order()) else { return Sym3::zero() };
    let lmax = zx_max + nmax - 1 - reg.zmin;
    let mut out = Sym3::zero();
    for l in 0..=lmax.max(-1) {
        let y = x.shift_apply(l, win);
        for (n, a) in left.coeffs() {
            if n - l - 1 + zx_max < reg.zmin {
                continue;
            }
            out.add_assign(&y.lmul(a, n - l - 1, win));
        }
    }
    out
}

/// `Σ_n b_n (w+λ+∂)^n X`.
fn operator_at_shift(b: &Pdo, x: &Sym3, reg: Region) -> Sym3 {
    let win = reg.window();
    let mut out = Sym3::zero();
    for (n, c) in b.coeffs() {
        out.add_assign(&x.shift_apply(n, win).lmul(c, 0, win));
    }
    out
}

/// `{A_ij(z)_λ B_hk(w)}` on the region.
fn lhs_bracket<B: LambdaBracket + ?Sized>(
    br: &B,
    a: &Pdo,
    b: &Pdo,
    reg: Region,
) -> Result<Sym3, PvaError> {
    let mut out = Sym3::zero();
    for (m, x) in a.coeffs() {
        for (n, y) in b.coeffs() {
            if !reg.contains(m, n) {
                continue;
            }
            for (k, c) in br.bracket(x, y)?.coeffs() {
                out.add_term((m, n, k), c);
            }
        }
    }
    Ok(out)
}

fn compare(rep: &mut Report, label: String, lhs: &Sym3, rhs: &Sym3, reg: Region) {
    let mut diff = lhs.sub(rhs);
    diff.retain(|z, w, _| reg.contains(z, w));
    let first = diff.terms().next().map(|(&k, c)| (k, c.clone()));
    match first {
        None => rep.pass(label),
        Some(((z, w, l), c)) => {
            rep.fail(label, format!("coefficient of z^{} w^{} λ^{} differs by {}", z, w, l, c))
        }
    }
}

fn indices(n: usize) -> Vec<(usize, usize, usize, usize)> {
    let mut v = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for h in 0..n {
                for k in 0..n {
                    v.push((i, j, h, k));
                }
            }
        }
    }
    v
}

fn collect(name: &str, results: Vec<Result<Report, PvaError>>) -> Result<Report, PvaError> {
    let mut rep = Report::new(name);
    for r in results {
        for it in r?.items {
            rep.items.push(it);
        }
    }
    Ok(rep)
}

/// Checks the Adler identity
/// `{A_ij(z)_λ A_hk(w)} = A_hj(w+λ+∂) ι_z(z-w-λ-∂)^{-1} (A_ik)^*(λ-z) - A_hj(z) ι_z(z-w-λ-∂)^{-1} A_ik(w)`
/// coefficientwise, for `z`-powers down to `depth` and all `w`, `λ` powers that are known.
pub fn check_adler<B: LambdaBracket + ?Sized>(a: &MatPdo, br: &B, depth: i64) -> Result<Report, PvaError> {
    assert!(a.is_square());
    let reg = Region::for_pair(a, a, depth);
    let xwin = Window { zmin: reg.zmin + 1, wmin: reg.wmin };
    let n = a.rows;
    let results: Vec<Result<Report, PvaError>> = indices(n)
        .into_par_iter()
        .map(|(i, j, h, k)| {
            let mut rep = Report::new("");
            let lhs = lhs_bracket(br, a.get(i, j), a.get(h, k), reg)?;
            let x = adjoint_symbol(a.get(i, k), xwin);
            let mut rhs = shifted_left(Some(a.get(h, j)), &x, reg);
            let t2 = plain_left(Some(a.get(h, j)), &symbol_w(a.get(i, k)), reg);
            rhs = rhs.sub(&t2);
            compare(&mut rep, format!("({},{}) ({},{})", i + 1, j + 1, h + 1, k + 1), &lhs, &rhs, reg);
            Ok(rep)
        })
        .collect();
    collect("adler", results)
}

/// Checks the ε-linear part of the `S̄`-Adler condition:
/// `{A_ij(z)_λ A_hk(w)}_1 = S̄_ik ι_z(z-w-λ)^{-1}(A_hj(w+λ) - A_hj(z))
///   + S̄_hj ι_z(z-w-λ-∂)^{-1}((A_ik)^*(λ-z) - A_ik(w))`.
pub fn check_adler_linear<B: LambdaBracket + ?Sized>(
    a: &MatPdo,
    br1: &B,
    sbar: &RatMat,
    depth: i64,
) -> Result<Report, PvaError> {
    assert!(a.is_square() && sbar.rows == a.rows && sbar.cols == a.cols);
    let reg = Region::for_pair(a, a, depth);
    let xwin = Window { zmin: reg.zmin + 1, wmin: reg.wmin };
    let n = a.rows;
    let one = Sym3::one();
    let results: Vec<Result<Report, PvaError>> = indices(n)
        .into_par_iter()
        .map(|(i, j, h, k)| {
            let mut rep = Report::new("");
            let lhs = lhs_bracket(br1, a.get(i, j), a.get(h, k), reg)?;
            let mut rhs = Sym3::zero();
            let sik = &sbar[(i, k)];
            if !num_traits::Zero::is_zero(sik) {
                let t = shifted_left(Some(a.get(h, j)), &one, reg).sub(&plain_left(Some(a.get(h, j)), &one, reg));
                rhs.add_assign(&t.scale(sik));
            }
            let shj = &sbar[(h, j)];
            if !num_traits::Zero::is_zero(shj) {
                let x = adjoint_symbol(a.get(i, k), xwin).sub(&symbol_w(a.get(i, k)));
                rhs.add_assign(&shifted_left(None, &x, reg).scale(shj));
            }
            compare(&mut rep, format!("({},{}) ({},{})", i + 1, j + 1, h + 1, k + 1), &lhs, &rhs, reg);
            Ok(rep)
        })
        .collect();
    collect("adler, linear part", results)
}

/// `A + εS̄` is of Adler type for `{·_λ·}_0 + ε{·_λ·}_1`.
pub fn check_bi_adler<B0: LambdaBracket + ?Sized, B1: LambdaBracket + ?Sized>(
    a: &MatPdo,
    br0: &B0,
    br1: &B1,
    sbar: &RatMat,
    depth: i64,
) -> Result<Report, PvaError> {
    let mut rep = Report::new("bi-adler");
    rep.merge(check_adler(a, br0, depth)?);
    rep.merge(check_adler_linear(a, br1, sbar, depth)?);
    Ok(rep)
}

/// Checks that `A^{-1}` is of Adler type for the opposite bracket and the mixed identity
/// `{A_ij(z)_λ (A^{-1})_hk(w)} = -δ_hj Σ_t ι_z(z-w-λ-∂)^{-1}(A_it)^*(λ-z)(A^{-1})_tk(w)
///   + δ_ik Σ_t (A^{-1})_ht(w+λ+∂) A_tj(z) ι_z(z-w-λ)^{-1}`.
pub fn check_inverse_adler<B: LambdaBracket + ?Sized>(a: &MatPdo, br: &B, depth: i64) -> Result<Report, PvaError> {
    let b = invert(a, depth)?;
    let mut rep = Report::new("inverse adler");
    rep.merge(check_adler(&b, &Negated(br), depth)?);
    rep.merge(check_mixed_inverse(a, &b, br, depth)?);
    Ok(rep)
}

/// The mixed bracket identity between the entries of `A` and of its inverse `B`.
pub fn check_mixed_inverse<B: LambdaBracket + ?Sized>(
    a: &MatPdo,
    b: &MatPdo,
    br: &B,
    depth: i64,
) -> Result<Report, PvaError> {
    let reg = {
        let mut r = Region::for_pair(a, b, depth);
        if let Some(fb) = b.floor() {
            r.summin = Some(fb + a.order().unwrap_or(0) - 1);
        }
        r
    };
    let win = reg.window();
    let xwin = Window { zmin: reg.zmin + 1, wmin: reg.wmin };
    let n = a.rows;
    // ι_z(z-w-λ)^{-1} = Σ_l z^{-l-1} (w+λ)^l
    let geo = shifted_left(None, &Sym3::one(), Region { zmin: reg.zmin - a.order().unwrap_or(0).max(0), ..reg });
    let results: Vec<Result<Report, PvaError>> = indices(n)
        .into_par_iter()
        .map(|(i, j, h, k)| {
            let mut rep = Report::new("");
            let lhs = lhs_bracket(br, a.get(i, j), b.get(h, k), reg)?;
            let mut rhs = Sym3::zero();
            if h == j {
                let mut x = Sym3::zero();
                for t in 0..n {
                    x.add_assign(&adjoint_symbol(a.get(i, t), xwin).mul(&symbol_w(b.get(t, k)), xwin));
                }
                rhs = rhs.sub(&shifted_left(None, &x, reg));
            }
            if i == k {
                for t in 0..n {
                    let azt = crate::pdo::symbol_z(a.get(t, j));
                    let x = azt.mul(&geo, win);
                    rhs.add_assign(&operator_at_shift(b.get(h, t), &x, reg));
                }
            }
            compare(&mut rep, format!("({},{}) ({},{})", i + 1, j + 1, h + 1, k + 1), &lhs, &rhs, reg);
            Ok(rep)
        })
        .collect();
    collect("mixed inverse bracket", results)
}
