use num_traits::{One, Zero};

use crate::ring::{DiffPoly, Rat};

use super::linalg::RatMat;
use super::matrix::MatPdo;
use super::scalar::{max_floor, Pdo};
use super::PdoError;

fn const_times(m: &RatMat, v: &[DiffPoly], cols: usize) -> Vec<DiffPoly> {
    let rows = m.rows;
    let inner = m.cols;
    let mut out = vec![DiffPoly::zero(); rows * cols];
    for i in 0..rows {
        for k in 0..inner {
            let c = &m[(i, k)];
            if num_traits::Zero::is_zero(c) {
                continue;
            }
            for j in 0..cols {
                out[i * cols + j].add_scaled(&v[k * cols + j], c);
            }
        }
    }
    out
}

/// Inverse when the leading coefficient is a constant invertible matrix.
fn invert_leading(a: &MatPdo, n: i64, c_inv: &RatMat, target: i64) -> MatPdo {
    let size = a.rows;
    let floor = max_floor(Some(target), a.floor().map(|f| f - 2 * n)).unwrap();
    let jmax = -n - floor;
    let mut b = MatPdo::zeros(size, size).with_floor(floor);
    if jmax < 0 {
        return b;
    }
    // a ∘ b, tracked at degrees >= -jmax
    let mut product = MatPdo::zeros(size, size).with_floor(-jmax);
    for j in 0..=jmax {
        let mut resid: Vec<DiffPoly> = product.coeff(-j).into_iter().map(|p| -p).collect();
        if j == 0 {
            for i in 0..size {
                resid[i * size + i] += &DiffPoly::one();
            }
        }
        let bj = const_times(c_inv, &resid, size);
        if bj.iter().all(DiffPoly::is_zero) {
            continue;
        }
        let term = MatPdo::term(size, size, &bj, -n - j);
        product = product.add(&a.mul_to(&term, Some(-jmax)));
        b = b.add(&term.with_floor(floor));
    }
    b
}

/// Two-sided inverse of a square matrix pseudodifferential operator, valid down to `target`
/// (or the coarser floor forced by the operand).
pub fn invert(a: &MatPdo, target: i64) -> Result<MatPdo, PdoError> {
    if !a.is_square() {
        return Err(PdoError::NotSquare);
    }
    let n = a.order().ok_or(PdoError::NotInvertible("operator is zero".into()))?;
    let Some(c) = a.const_coeff(n) else {
        return Err(PdoError::NotInvertible("leading coefficient is not constant".into()));
    };
    if let Some(c_inv) = c.inverse() {
        return Ok(invert_leading(a, n, &c_inv, target));
    }
    invert_block(a, n, &c, target)
}

/// Schur-complement route for a singular constant leading coefficient.
fn invert_block(a: &MatPdo, n: i64, c: &RatMat, target: i64) -> Result<MatPdo, PdoError> {
    let size = a.rows;
    let (p, q, r) = c.normal_form();
    let ap = MatPdo::from_const(&p).mul(a).mul(&MatPdo::from_const(&q));
    let d = ap.block(r, size, r, size);
    let m = d.order().ok_or(PdoError::NotInvertible("lower-right block vanishes".into()))?;
    let Some(d_lead_inv) = d.const_coeff(m).and_then(|c| c.inverse()) else {
        return Err(PdoError::NotInvertible(
            "leading coefficient of the lower-right block is not a constant invertible matrix".into(),
        ));
    };
    let aa = ap.block(0, r, 0, r);
    let bb = ap.block(0, r, r, size);
    let cc = ap.block(r, size, 0, r);
    let attempt = |inner: i64| -> Result<MatPdo, PdoError> {
        let d_inv = invert_leading(&d, m, &d_lead_inv, inner);
        let d_inv_c = d_inv.mul_to(&cc, Some(inner));
        let b_d_inv = bb.mul_to(&d_inv, Some(inner));
        let schur = aa.sub(&bb.mul_to(&d_inv_c, Some(inner)));
        let s_inv = invert(&schur, inner)?;
        let top_right = s_inv.mul_to(&b_d_inv, Some(inner)).neg();
        let bottom_left = d_inv_c.mul_to(&s_inv, Some(inner)).neg();
        let bottom_right = d_inv.add(&d_inv_c.mul_to(&s_inv, Some(inner)).mul_to(&b_d_inv, Some(inner)));
        let inv = MatPdo::from_blocks(&s_inv, &top_right, &bottom_left, &bottom_right);
        Ok(MatPdo::from_const(&q).mul_to(&inv, Some(inner)).mul_to(&MatPdo::from_const(&p), Some(inner)))
    };
    // Go deeper only as far as needed for the result to be known down to `target`.
    let mut inner = target - n.abs();
    let mut out = attempt(inner)?;
    for _ in 0..8 {
        match out.floor() {
            Some(f) if f > target => {
                inner -= f - target;
                out = attempt(inner)?;
            }
            _ => break,
        }
    }
    Ok(out.with_floor(target))
}

/// Which inversion failed while forming a quasideterminant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuasidetStage {
    Operator,
    Compressed,
}

/// Generalized quasideterminant `(J A^{-1} I)^{-1}`, valid down to `target`.
pub fn quasideterminant(a: &MatPdo, i: &RatMat, j: &RatMat, target: i64) -> Result<MatPdo, PdoError> {
    if !a.is_square() || i.rows != a.rows || j.cols != a.cols || i.cols != j.rows || i.cols > a.rows {
        return Err(PdoError::ShapeMismatch);
    }
    if let Some(out) = coordinate_quasideterminant(a, i, j, target)? {
        return Ok(out);
    }
    let n = a.order().unwrap_or(0);
    let mut inner = target - 2 * n.max(1);
    for _ in 0..3 {
        let a_inv = invert(a, inner).map_err(|e| stage(e, QuasidetStage::Operator))?;
        let m = MatPdo::from_const(j).mul(&a_inv).mul(&MatPdo::from_const(i));
        let Some(om) = m.order() else {
            return Err(PdoError::QuasidetNotInvertible(QuasidetStage::Compressed, "J A^-1 I vanishes".into()));
        };
        let needed = target + 2 * om;
        if m.floor().is_some_and(|f| f > needed) && inner > needed {
            inner = needed;
            continue;
        }
        return invert(&m, target).map_err(|e| stage(e, QuasidetStage::Compressed));
    }
    unreachable!("floor adjustment converges after one retry")
}

/// Position of the single 1 in each column of `m` (or row, with `rows`), if `m` is a selection.
fn selection(m: &RatMat, rows: bool) -> Option<Vec<usize>> {
    let (outer, inner) = if rows { (m.rows, m.cols) } else { (m.cols, m.rows) };
    let mut out = Vec::with_capacity(outer);
    for o in 0..outer {
        let mut pos = None;
        for t in 0..inner {
            let v = if rows { &m[(o, t)] } else { &m[(t, o)] };
            if v.is_zero() {
                continue;
            }
            if !v.is_one() || pos.is_some() {
                return None;
            }
            pos = Some(t);
        }
        out.push(pos?);
    }
    let mut sorted = out.clone();
    sorted.sort_unstable();
    sorted.dedup();
    (sorted.len() == out.len()).then_some(out)
}

fn submatrix(a: &MatPdo, rows: &[usize], cols: &[usize]) -> MatPdo {
    let entries = rows.iter().flat_map(|&r| cols.iter().map(move |&c| a.get(r, c).clone())).collect();
    MatPdo::from_entries(rows.len(), cols.len(), entries)
}

/// A nonzero rational constant entry.
fn constant_pivot(p: &Pdo) -> Option<Rat> {
    if p.order() != Some(0) || p.low_degree() != Some(0) {
        return None;
    }
    p.coeff(0).as_constant().filter(|c| !c.is_zero())
}

fn compose(a: &Pdo, b: &Pdo, work: i64) -> Pdo {
    if a.is_exact() && b.is_exact() && a.low_degree().is_some_and(|k| k < 0) {
        a.mul_to(b, Some(work))
    } else {
        a.mul(b)
    }
}

/// Quasideterminant when `I` selects the rows `R` and `J` the columns `C`.
///
/// Constant pivots outside `R` and `C` are eliminated exactly first; the remaining core is
/// handled by `A_{RC} - A_{R,C'} (A_{R',C'})^{-1} A_{R',C}`. Returns `None` when the core
/// cannot be inverted this way.
fn coordinate_quasideterminant(a: &MatPdo, i: &RatMat, j: &RatMat, target: i64) -> Result<Option<MatPdo>, PdoError> {
    let (Some(rr), Some(cc)) = (selection(i, false), selection(j, true)) else { return Ok(None) };
    let n = a.rows;
    let work = target - 2 * n as i64 * a.order().unwrap_or(1).max(1);
    let mut m: Vec<Vec<Pdo>> = (0..n).map(|r| (0..n).map(|c| a.get(r, c).clone()).collect()).collect();
    let mut rows: Vec<usize> = (0..n).collect();
    let mut cols: Vec<usize> = (0..n).collect();
    loop {
        let pivot = rows
            .iter()
            .filter(|x| !rr.contains(x))
            .flat_map(|&x| cols.iter().filter(|y| !cc.contains(y)).map(move |&y| (x, y)))
            .find_map(|(x, y)| constant_pivot(&m[x][y]).map(|c| (x, y, c)));
        let Some((x, y, c)) = pivot else { break };
        let cinv = c.recip();
        for &u in rows.iter().filter(|&&u| u != x) {
            if m[u][y].is_zero() {
                continue;
            }
            let factor = m[u][y].scale(&cinv);
            for &v in cols.iter().filter(|&&v| v != y) {
                if !m[x][v].is_zero() {
                    m[u][v] = m[u][v].sub(&compose(&factor, &m[x][v], work));
                }
            }
        }
        rows.retain(|&u| u != x);
        cols.retain(|&v| v != y);
    }
    let reduced = MatPdo::from_entries(n, n, m.into_iter().flatten().collect());
    let rest_r: Vec<usize> = rows.iter().copied().filter(|x| !rr.contains(x)).collect();
    let rest_c: Vec<usize> = cols.iter().copied().filter(|x| !cc.contains(x)).collect();
    let top = submatrix(&reduced, &rr, &cc);
    if rest_r.is_empty() && rest_c.is_empty() {
        return Ok(Some(top.with_floor(target)));
    }
    if rest_r.len() != rest_c.len() {
        return Ok(None);
    }
    let left = submatrix(&reduced, &rr, &rest_c);
    let right = submatrix(&reduced, &rest_r, &cc);
    let minor = submatrix(&reduced, &rest_r, &rest_c);
    let lo = left.order().unwrap_or(0).max(0);
    let ro = right.order().unwrap_or(0).max(0);
    let mut inner = target - lo - ro - 2;
    for _ in 0..4 {
        let inv = match invert(&minor, inner) {
            Ok(inv) => inv,
            Err(PdoError::NotInvertible(_)) => return Ok(None),
            Err(e) => return Err(e),
        };
        let corr = left.mul_to(&inv, Some(target - ro)).mul_to(&right, Some(target));
        let out = top.sub(&corr);
        match out.floor() {
            Some(f) if f > target => inner -= f - target,
            _ => return Ok(Some(out.with_floor(target))),
        }
    }
    Ok(None)
}

fn stage(e: PdoError, s: QuasidetStage) -> PdoError {
    match e {
        PdoError::NotInvertible(msg) => PdoError::QuasidetNotInvertible(s, msg),
        other => other,
    }
}

/// Checks `|A + I S0 J|_{IJ} = |A|_{IJ} + S0` down to the common floor.
pub fn shift_quasideterminant_check(
    a: &MatPdo,
    i: &RatMat,
    j: &RatMat,
    s0: &RatMat,
    target: i64,
) -> Result<bool, PdoError> {
    let s = i.mul(s0).mul(j);
    let lhs = quasideterminant(&a.add(&MatPdo::from_const(&s)), i, j, target)?;
    let rhs = quasideterminant(a, i, j, target)?.add(&MatPdo::from_const(s0));
    Ok(lhs.agrees(&rhs))
}

/// The `K`-th root with identity leading coefficient of a monic operator.
pub fn kth_root(a: &MatPdo, k: u32, target: i64) -> Result<MatPdo, PdoError> {
    if !a.is_square() {
        return Err(PdoError::NotSquare);
    }
    let size = a.rows;
    let p = a.order().ok_or(PdoError::NotMonic)?;
    if a.const_coeff(p) != Some(RatMat::identity(size)) {
        return Err(PdoError::NotMonic);
    }
    let kk = k as i64;
    if k == 0 || p % kk != 0 {
        return Err(PdoError::OrderNotDivisible { order: p, k });
    }
    let m = p / kk;
    let floor = max_floor(Some(target), a.floor().map(|f| f - p + m)).unwrap();
    let mut b = MatPdo::term(size, size, &MatPdo::identity(size).coeff(0), m);
    let inv_k = Rat::new(1.into(), kk.into());
    let mut jj = 1;
    while m - jj >= floor {
        let deg = p - jj;
        let power = b.pow_to(k, Some(deg));
        let diff: Vec<DiffPoly> =
            a.coeff(deg).iter().zip(power.coeff(deg)).map(|(x, y)| (x - &y).scale(&inv_k)).collect();
        if diff.iter().any(|c| !c.is_zero()) {
            b = b.add(&MatPdo::term(size, size, &diff, m - jj));
        }
        jj += 1;
    }
    Ok(b.with_floor(floor))
}

/// Scalar convenience wrapper around [`invert`].
pub fn invert_scalar(a: &Pdo, target: i64) -> Result<Pdo, PdoError> {
    Ok(invert(&MatPdo::scalar(a.clone()), target)?.get(0, 0).clone())
}
