//! Closed-form fixtures shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use wlax::pdo::Pdo;
use wlax::ring::{DiffPoly, GenId};

pub fn q(a: (u16, u16), b: (u16, u16)) -> DiffPoly {
    DiffPoly::gen(GenId::Q(a, b))
}

pub fn w(i: u16, j: u16, k: u16) -> DiffPoly {
    DiffPoly::gen(GenId::W(i, j, k))
}

/// Principal `gl_N`: `q_{ab}` with `a, b` positions in the single row.
fn qp(a: u16, b: u16) -> DiffPoly {
    q((1, a), (1, b))
}

/// `δ ∂ + c` as an operator.
fn lin(delta: bool, c: DiffPoly) -> Pdo {
    let base = Pdo::constant(c);
    if delta {
        base.add(&Pdo::d_pow(1))
    } else {
        base
    }
}

/// Principal generators from the expansion of the quasideterminant as a sum over chains
/// `2 <= h_1 < ... < h_s <= N` of composed first-order factors.
pub fn principal_generators(n: u16) -> BTreeMap<u16, DiffPoly> {
    let mut total = Pdo::constant(qp(n, 1));
    for mask in 1u32..(1 << (n - 1)) {
        let hs: Vec<u16> = (2..=n).filter(|h| mask & (1 << (h - 2)) != 0).collect();
        let mut prev = 1;
        let mut op = Pdo::one();
        for &h in &hs {
            op = op.mul(&lin(h - 1 == prev, qp(h - 1, prev)));
            prev = h;
        }
        op = op.mul(&lin(n == prev, qp(n, prev)));
        if hs.len() % 2 == 1 {
            op = op.neg();
        }
        total = total.add(&op);
    }
    // total = -(-∂)^N + Σ w_k (-∂)^k
    let total = total.add(&Pdo::neg_d_pow(n as i64));
    (0..n)
        .map(|k| {
            let c = total.coeff(k as i64);
            (k, if k % 2 == 1 { -c } else { c })
        })
        .collect()
}

/// `p = (2, ..., 2)` with `r` rows: `(w_{ji;1}, w_{ji;0})` keyed by `(j, i, k)`.
pub fn short_generators(r: u16) -> BTreeMap<(u16, u16, u16), DiffPoly> {
    let mut out = BTreeMap::new();
    for j in 1..=r {
        for i in 1..=r {
            out.insert((j, i, 1), q((j, 1), (i, 1)) + q((j, 2), (i, 2)));
            let mut w0 = q((j, 2), (i, 1)) - q((j, 2), (i, 2)).d();
            for k in 1..=r {
                w0 -= &(q((k, 1), (i, 1)) * q((j, 2), (k, 2)));
            }
            out.insert((j, i, 0), w0);
        }
    }
    out
}

/// `p = (2, 1, ..., 1)` with `r` rows.
pub fn minimal_generators(r: u16) -> BTreeMap<(u16, u16, u16), DiffPoly> {
    let plus = || 2..=r;
    // Q_{++}[a][b] = q_{(b1),(a1)}
    let qpp = |a: u16, b: u16| q((b, 1), (a, 1));
    // q_{+(1k)}[c] = q_{(c1),(1k)}, q_{(1k)+}[c] = q_{(1k),(c1)}
    let row = |c: u16, k: u16| q((c, 1), (1, k));
    let col = |c: u16, k: u16| q((1, k), (c, 1));
    let mut x = DiffPoly::zero(); // q_{+(12)} q_{(11)+}
    for a in plus() {
        x += &(row(a, 2) * col(a, 1));
    }
    let w111 = q((1, 1), (1, 1)) + q((1, 2), (1, 2)) + x.clone();
    let mut w110 = q((1, 2), (1, 1)) - q((1, 2), (1, 2)).d() - q((1, 1), (1, 1)) * q((1, 2), (1, 2)) - &w111 * &x;
    for a in plus() {
        w110 += &(row(a, 1) * col(a, 1));
        w110 += &(row(a, 2) * col(a, 2));
        w110 -= &(row(a, 2).d() * col(a, 1));
        for b in plus() {
            w110 += &(row(a, 2) * qpp(a, b) * col(b, 1));
        }
    }
    let mut out = BTreeMap::new();
    out.insert((1, 1, 1), w111);
    out.insert((1, 1, 0), w110);
    for c in plus() {
        let mut wc1 = row(c, 1) - row(c, 2).d() - q((1, 1), (1, 1)) * row(c, 2) - &x * &row(c, 2);
        let mut w1c = col(c, 2) + col(c, 1).d() - q((1, 2), (1, 2)) * col(c, 1) - &col(c, 1) * &x;
        for a in plus() {
            wc1 += &(row(a, 2) * qpp(a, c));
            w1c += &(qpp(c, a) * col(a, 1));
        }
        out.insert((c, 1, 0), wc1);
        out.insert((1, c, 0), w1c);
        for b in plus() {
            // W_{++}[c][b] = w_{bc;0}
            out.insert((b, c, 0), qpp(c, b) - col(c, 1) * row(b, 2));
        }
    }
    out
}

use wlax::pdo::RatMat;
use wlax::pva::LambdaPoly;
use wlax::ring::{binom, rat, sign_pow};

/// `u (λ+∂)^a v`.
pub fn apply(u: &DiffPoly, a: u32, v: &DiffPoly) -> LambdaPoly {
    LambdaPoly::constant(v.clone()).shift_apply(a).lmul(u)
}

/// `(-λ)^n c`.
pub fn neg_lambda(n: u32, c: &DiffPoly) -> LambdaPoly {
    LambdaPoly::term(c.scale(&sign_pow(n as i64)), n)
}

/// Generator of the rectangular pyramid `(p_1, ..., p_1)`, with `w_{ji;p_1} = -δ_{ij}`.
fn rect_w(p1: u16, j: u16, i: u16, k: i64) -> DiffPoly {
    if k == p1 as i64 {
        if i == j {
            DiffPoly::int(-1)
        } else {
            DiffPoly::zero()
        }
    } else {
        w(j, i, k as u16)
    }
}

/// `{w_{βα;h} _λ w_{δγ;k}}_0` on the rectangular pyramid with parts `p_1`.
pub fn rectangular_bracket0(p1: u16, (be, al, h): (u16, u16, u16), (de, ga, k): (u16, u16, u16)) -> LambdaPoly {
    let (p, h, k) = (p1 as i64, h as i64, k as i64);
    let mut out = LambdaPoly::zero();
    for n in 0..=p - h - 1 {
        for a in (n - k).max(0)..=p + n - k {
            let x = binom(n, a as u32) * sign_pow(a);
            out.add_assign(&apply(&rect_w(p1, be, ga, h + n + 1), a as u32, &rect_w(p1, de, al, k + a - n)).scale(&x));
            for b in 0..=p - n - h - 1 {
                let y = binom(h + n + b + 1, b as u32) * binom(k + a, a as u32) * sign_pow(a + 1);
                out.add_assign(
                    &apply(&rect_w(p1, be, ga, k + a - n), (a + b) as u32, &rect_w(p1, de, al, h + n + b + 1)).scale(&y),
                );
            }
        }
    }
    out
}

/// `{w_{βα;h} _λ w_{δγ;k}}_1` on the rectangular pyramid for the matrix `S̄`.
pub fn rectangular_bracket1(
    p1: u16,
    sbar: &RatMat,
    (be, al, h): (u16, u16, u16),
    (de, ga, k): (u16, u16, u16),
) -> LambdaPoly {
    let (p, h, k) = (p1 as i64, h as i64, k as i64);
    let s = |i: u16, j: u16| sbar[(i as usize - 1, j as usize - 1)].clone();
    let mut out = LambdaPoly::zero();
    for n in 0..=p - h - k - 1 {
        let m = h + k + n + 1;
        out.add_assign(&neg_lambda(n as u32, &rect_w(p1, be, ga, m).scale(&(binom(n + k, k as u32) * s(al, de)))));
        let v = rect_w(p1, de, al, m).scale(&(binom(n + h, h as u32) * s(ga, be)));
        out.add_assign(&LambdaPoly::constant(v).shift_apply(n as u32).neg());
    }
    out
}

/// `(σ(λ+∂) + z)^n p`, each factor acting on everything to its right.
pub fn op_pow(p: &LambdaPoly, sigma: i64, z: &DiffPoly, n: u32) -> LambdaPoly {
    let mut cur = p.clone();
    for _ in 0..n {
        let mut next = cur.shift_apply(1);
        if sigma < 0 {
            next = next.neg();
        }
        next.add_assign(&cur.lmul(z));
        cur = next;
    }
    cur
}

fn lc(c: &DiffPoly) -> LambdaPoly {
    LambdaPoly::constant(c.clone())
}

/// Generators of the constrained pyramid `(p_1, 1)`: `w_{11;k}` (with `w_{11;p_1} = -1`),
/// `w_{+1} = w_{21;0}`, `w_{1+} = w_{12;0}`, `W_{++} = w_{22;0}`.
pub struct Constrained {
    pub p1: u16,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CGen {
    W(u16),
    X,
    Y,
    Z,
}

impl CGen {
    pub fn all(p1: u16) -> Vec<CGen> {
        let mut v: Vec<CGen> = (0..p1).map(CGen::W).collect();
        v.extend([CGen::X, CGen::Y, CGen::Z]);
        v
    }

    pub fn id(self) -> GenId {
        match self {
            CGen::W(k) => GenId::W(1, 1, k),
            CGen::X => GenId::W(2, 1, 0),
            CGen::Y => GenId::W(1, 2, 0),
            CGen::Z => GenId::W(2, 2, 0),
        }
    }
}

impl Constrained {
    fn w(&self, k: i64) -> DiffPoly {
        rect_w(self.p1, 1, 1, k)
    }

    /// The 0-th bracket on the constrained W-algebra.
    pub fn bracket0(&self, a: CGen, b: CGen) -> LambdaPoly {
        let p = self.p1 as i64;
        let (x, y, z) = (w(2, 1, 0), w(1, 2, 0), w(2, 2, 0));
        let one = DiffPoly::one();
        let mut out = LambdaPoly::zero();
        match (a, b) {
            (CGen::W(h), CGen::W(k)) => {
                out = rectangular_bracket0(self.p1, (1, 1, h), (1, 1, k));
                let (h, k) = (h as i64, k as i64);
                for a in 0..=p - h - k - 2 {
                    for b in 0..=p - h - k - 2 - a {
                        let inner = op_pow(&lc(&x), -1, &z, b as u32).map(|c| c * &y);
                        let t = op_pow(&inner, -1, &DiffPoly::zero(), a as u32).lmul(&self.w(a + b + h + k + 2));
                        out.add_assign(&t.scale(&binom(k + a, a as u32)));
                        let inner = lc(&self.w(a + b + h + k + 2)).shift_apply(a as u32).lmul(&y);
                        let t = op_pow(&inner, 1, &z, b as u32).lmul(&x);
                        out.add_assign(&t.scale(&binom(h + a, a as u32)).neg());
                    }
                }
            }
            (CGen::W(h), CGen::X) => {
                for a in 0..=p - h as i64 - 1 {
                    out.add_assign(&op_pow(&lc(&x), -1, &z, a as u32).lmul(&self.w(a + h as i64 + 1)));
                }
            }
            (CGen::W(h), CGen::Y) => {
                let h = h as i64;
                for a in 0..=p - h - 1 {
                    for b in 0..=p - h - 1 - a {
                        let inner = lc(&self.w(a + b + h + 1)).shift_apply(a as u32).lmul(&y);
                        out.add_assign(&op_pow(&inner, 1, &z, b as u32).scale(&binom(a + h, a as u32)).neg());
                    }
                }
            }
            (CGen::X, CGen::W(k)) => {
                for a in 0..=p - k as i64 - 1 {
                    out.add_assign(&op_pow(&lc(&self.w(a + k as i64 + 1)), 1, &z, a as u32).lmul(&x).neg());
                }
            }
            (CGen::Y, CGen::W(k)) => {
                let k = k as i64;
                for a in 0..=p - k - 1 {
                    for b in 0..=p - k - 1 - a {
                        let inner = op_pow(&lc(&one), -1, &z, b as u32).lmul(&y);
                        let t = op_pow(&inner, -1, &DiffPoly::zero(), a as u32).lmul(&self.w(a + b + k + 1));
                        out.add_assign(&t.scale(&binom(a + k, a as u32)));
                    }
                }
            }
            (CGen::X, CGen::Y) => {
                for k in 0..=p {
                    out.add_assign(&op_pow(&lc(&self.w(k)), 1, &z, k as u32).neg());
                }
            }
            (CGen::Y, CGen::X) => {
                for h in 0..=p {
                    out.add_assign(&op_pow(&lc(&one), -1, &z, h as u32).lmul(&self.w(h)));
                }
            }
            (CGen::Z, CGen::Z) => out = LambdaPoly::term(DiffPoly::one(), 1),
            (CGen::X, CGen::Z) => out = lc(&-x),
            (CGen::Z, CGen::X) => out = lc(&x),
            (CGen::Y, CGen::Z) => out = lc(&y),
            (CGen::Z, CGen::Y) => out = lc(&-y),
            _ => {}
        }
        out
    }

    /// The linear bracket for `S̄ = 1`.
    pub fn bracket1(&self, a: CGen, b: CGen) -> LambdaPoly {
        match (a, b) {
            (CGen::W(h), CGen::W(k)) => rectangular_bracket1(self.p1, &RatMat::identity(1), (1, 1, h), (1, 1, k)),
            (CGen::X, CGen::Y) => lc(&DiffPoly::int(-1)),
            (CGen::Y, CGen::X) => lc(&DiffPoly::int(1)),
            _ => LambdaPoly::zero(),
        }
    }
}

/// The 0-th bracket table of `p = (2, 1)` written out entry by entry.
pub fn minimal_bracket0(a: CGen, b: CGen) -> LambdaPoly {
    let (w1, w0, x, y, z) = (w(1, 1, 1), w(1, 1, 0), w(2, 1, 0), w(1, 2, 0), w(2, 2, 0));
    let lam = |k: u32| LambdaPoly::term(DiffPoly::one(), k);
    let l = |k: u32, c: &DiffPoly| LambdaPoly::term(c.clone(), k);
    use CGen::*;
    match (a, b) {
        (W(1), W(1)) => lam(1).scale(&rat(2)),
        (W(1), W(0)) => l(1, &-w1.clone()).sub(&lam(2)),
        (W(0), W(1)) => lc(&w1).shift_apply(1).neg().add(&lam(2)),
        (W(0), W(0)) => {
            // (∂+2λ)w0 + w1(λ+∂)w1 + (∂+2λ)∂w1 - λ^3
            let mut v = l(0, &w0.d()).add(&l(1, &w0.scale(&rat(2))));
            v.add_assign(&apply(&w1, 1, &w1));
            v.add_assign(&l(0, &w1.d_n(2)).add(&l(1, &w1.d().scale(&rat(2)))));
            v.sub(&lam(3))
        }
        (W(1), X) => lc(&-x),
        (X, W(1)) => lc(&x),
        (W(1), Y) => lc(&y),
        (Y, W(1)) => lc(&-y),
        (W(0), X) => lc(&x).shift_apply(1).add(&lc(&(&(&w1 * &x) - &(&x * &z)))),
        (X, W(0)) => l(1, &x).add(&lc(&(&(&x * &z) - &(&w1 * &x)))),
        (W(0), Y) => l(0, &y.d()).add(&l(1, &y.scale(&rat(2)))).add(&lc(&(&(&z * &y) - &(&w1 * &y)))),
        (Y, W(0)) => l(0, &y.d()).add(&l(1, &y.scale(&rat(2)))).sub(&lc(&(&(&z * &y) - &(&w1 * &y)))),
        (X, X) | (Y, Y) => LambdaPoly::zero(),
        (Y, X) => {
            // -(λ+∂+w1-Z)(λ-Z) + w0
            let inner = lam(1).sub(&lc(&z));
            let mut v = inner.shift_apply(1).add(&inner.lmul(&(&w1 - &z)));
            v = v.neg();
            v.add(&lc(&w0))
        }
        (X, Y) => {
            // (λ+∂+Z)(λ-w1+Z) - w0
            let inner = lam(1).add(&lc(&(&z - &w1)));
            inner.shift_apply(1).add(&inner.lmul(&z)).sub(&lc(&w0))
        }
        (W(_), Z) | (Z, W(_)) => LambdaPoly::zero(),
        (X, Z) => lc(&-x),
        (Z, X) => lc(&x),
        (Y, Z) => lc(&y),
        (Z, Y) => lc(&-y),
        (Z, Z) => lam(1),
        _ => unreachable!(),
    }
}

/// The linear bracket table of `p = (2, 1)` for `S̄ = 1`.
pub fn minimal_bracket1(a: CGen, b: CGen) -> LambdaPoly {
    use CGen::*;
    match (a, b) {
        (W(0), W(0)) => LambdaPoly::term(DiffPoly::int(2), 1),
        (X, Y) => lc(&DiffPoly::int(-1)),
        (Y, X) => lc(&DiffPoly::int(1)),
        _ => LambdaPoly::zero(),
    }
}

/// `Q̄_{ij}`, the entries of `(-1)^{p_1}` times the `∂^{-p_1-1}` coefficient of `J_1 ρ(1∂+Q)^{-1} I_1`,
/// summed over the chains of boxes from `(i, p_1)` down to `(j, 1)`.
pub fn qbar(parts: &[u16]) -> Vec<Vec<DiffPoly>> {
    let p1 = parts[0] as i64;
    let r1 = parts.iter().filter(|&&p| p as i64 == p1).count() as u16;
    let mut out = vec![vec![DiffPoly::zero(); r1 as usize]; r1 as usize];
    for i in 1..=r1 {
        for j in 1..=r1 {
            let e = &mut out[i as usize - 1][j as usize - 1];
            for s in 0..p1 {
                let h = (p1 - s) as u16;
                *e += &q((j, h), (i, h));
            }
            for s in 0..p1 {
                for t in s + 1..p1 {
                    for (ti, &pt) in parts.iter().enumerate() {
                        let twice = pt as i64 + p1 - 1 - 2 * s;
                        if twice % 2 != 0 {
                            continue;
                        }
                        let th = twice / 2;
                        let th2 = th + s + 1 - t;
                        if th < 1 || th > pt as i64 || th2 < 1 {
                            continue;
                        }
                        let ti = ti as u16 + 1;
                        *e += &(&q((ti, th as u16), (i, (p1 - s) as u16)) * &q((j, (p1 - t) as u16), (ti, th2 as u16)));
                    }
                }
            }
        }
    }
    out
}

pub mod random {
    use rand::rngs::StdRng;
    use rand::{RngExt, SeedableRng};
    use wlax::pdo::{MatPdo, Pdo, RatMat};
    use wlax::ring::{ratio, DiffPoly, GenId, Rat};

    pub fn rng(seed: u64) -> StdRng {
        StdRng::seed_from_u64(seed)
    }

    pub fn small_rat(rng: &mut StdRng) -> Rat {
        ratio(rng.random_range(-3..=3), rng.random_range(1..=2))
    }

    pub fn const_mat(rng: &mut StdRng, rows: usize, cols: usize) -> RatMat {
        RatMat::from_rows((0..rows).map(|_| (0..cols).map(|_| small_rat(rng)).collect()).collect())
    }

    /// A constant plus a random combination of `u_0, u_1` and their first derivatives.
    pub fn coeff(rng: &mut StdRng) -> DiffPoly {
        let mut c = DiffPoly::constant(small_rat(rng));
        for g in 0..2 {
            let u = DiffPoly::gen(GenId::Abstract(g));
            c += &u.scale(&small_rat(rng));
            if rng.random_range(0..3) == 0 {
                c += &u.d().scale(&small_rat(rng));
            }
        }
        c
    }

    /// `1∂ + C(u)` with random coefficients.
    pub fn first_order(rng: &mut StdRng, n: usize) -> MatPdo {
        let c: Vec<DiffPoly> = (0..n * n).map(|_| coeff(rng)).collect();
        let d = MatPdo::from_entries(n, n, (0..n * n).map(|k| if k % (n + 1) == 0 { Pdo::d_pow(1) } else { Pdo::zero() }).collect());
        d.add(&MatPdo::term(n, n, &c, 0))
    }

    /// Constant `I` (`n × m`) and `J` (`m × n`) with `JI` invertible.
    pub fn projections(rng: &mut StdRng, n: usize, m: usize) -> (RatMat, RatMat) {
        loop {
            let i = const_mat(rng, n, m);
            let j = const_mat(rng, m, n);
            if j.mul(&i).inverse().is_some() {
                return (i, j);
            }
        }
    }
}
