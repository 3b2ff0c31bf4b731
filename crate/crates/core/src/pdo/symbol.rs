use std::collections::BTreeMap;

use crate::ring::{binom, sign_pow, DiffPoly, Rat};

use super::scalar::Pdo;

/// Laurent series in the commuting symbols `z`, `w` and polynomial in `λ`, with coefficients
/// in the differential algebra. Keys are `(z-exponent, w-exponent, λ-exponent)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Sym3 {
    terms: BTreeMap<(i64, i64, u32), DiffPoly>,
}

/// Lower bounds on the exponents kept by truncated expansions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub zmin: i64,
    pub wmin: i64,
}

impl Window {
    pub fn keeps(&self, z: i64, w: i64) -> bool {
        z >= self.zmin && w >= self.wmin
    }
}

impl Sym3 {
    pub fn zero() -> Self {
        Sym3::default()
    }

    pub fn one() -> Self {
        let mut s = Sym3::zero();
        s.add_term((0, 0, 0), &DiffPoly::one());
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64, u32), &DiffPoly)> {
        self.terms.iter()
    }

    pub fn get(&self, key: (i64, i64, u32)) -> DiffPoly {
        self.terms.get(&key).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, key: (i64, i64, u32), c: &DiffPoly) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_assign(&mut self, other: &Sym3) {
        for (&k, c) in &other.terms {
            self.add_term(k, c);
        }
    }

    pub fn sub(&self, other: &Sym3) -> Sym3 {
        let mut out = self.clone();
        for (&k, c) in &other.terms {
            out.add_term(k, &-c);
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Sym3 {
        let mut out = Sym3::zero();
        for (&k, p) in &self.terms {
            out.add_term(k, &p.scale(c));
        }
        out
    }

    pub fn retain<F: Fn(i64, i64, u32) -> bool>(&mut self, keep: F) {
        self.terms.retain(|&(z, w, l), _| keep(z, w, l));
    }

    pub fn truncated(&self, win: Window) -> Sym3 {
        let mut out = self.clone();
        out.retain(|z, w, _| win.keeps(z, w));
        out
    }

    /// Plain product of series, truncated to the window.
    pub fn mul(&self, other: &Sym3, win: Window) -> Sym3 {
        let mut out = Sym3::zero();
        for (&(z1, w1, l1), a) in &self.terms {
            for (&(z2, w2, l2), b) in &other.terms {
                if win.keeps(z1 + z2, w1 + w2) {
                    out.add_term((z1 + z2, w1 + w2, l1 + l2), &(a * b));
                }
            }
        }
        out
    }

    /// Multiply by `c z^dz` on the left (no derivative acts).
    pub fn lmul(&self, c: &DiffPoly, dz: i64, win: Window) -> Sym3 {
        let mut out = Sym3::zero();
        for (&(z, w, l), p) in &self.terms {
            if win.keeps(z + dz, w) {
                out.add_term((z + dz, w, l), &(c * p));
            }
        }
        out
    }

    /// Apply `(w + λ + ∂)^s`, with `∂` acting on the coefficients; negative powers are
    /// expanded for large `w`.
    pub fn shift_apply(&self, s: i64, win: Window) -> Sym3 {
        let mut out = Sym3::zero();
        for (&(z, w, l), c) in &self.terms {
            if z < win.zmin {
                continue;
            }
            let mut derivs = vec![c.clone()];
            let mut r: u32 = 0;
            loop {
                let wexp = w + s - r as i64;
                if wexp < win.wmin || (s >= 0 && r as i64 > s) {
                    break;
                }
                let cr = binom(s, r);
                for t in 0..=r {
                    while derivs.len() <= t as usize {
                        let next = derivs.last().unwrap().d();
                        derivs.push(next);
                    }
                    let dt = &derivs[t as usize];
                    if dt.is_zero() {
                        break;
                    }
                    let coef = &cr * binom(r as i64, t);
                    out.add_term((z, wexp, l + r - t), &dt.scale(&coef));
                }
                r += 1;
            }
        }
        out
    }
}

/// `A(z)`: replace `∂` by `z`.
pub fn symbol_z(a: &Pdo) -> Sym3 {
    let mut s = Sym3::zero();
    for (k, c) in a.coeffs() {
        s.add_term((k, 0, 0), c);
    }
    s
}

/// `A(w)`.
pub fn symbol_w(a: &Pdo) -> Sym3 {
    let mut s = Sym3::zero();
    for (k, c) in a.coeffs() {
        s.add_term((0, k, 0), c);
    }
    s
}

/// `A^*(λ - z)`, the symbol of the adjoint at `λ - z`, expanded for large `z`.
pub fn adjoint_symbol(a: &Pdo, win: Window) -> Sym3 {
    let adj = match a.floor() {
        Some(_) => a.adjoint_to(None),
        None if a.low_degree().is_some_and(|k| k < 0) => a.adjoint_to(Some(win.zmin)),
        None => a.adjoint(),
    };
    let mut s = Sym3::zero();
    for (m, c) in adj.coeffs() {
        let mut r: u32 = 0;
        loop {
            let zexp = m - r as i64;
            if zexp < win.zmin || (m >= 0 && r as i64 > m) {
                break;
            }
            let coef = binom(m, r) * sign_pow(zexp);
            s.add_term((zexp, 0, r), &c.scale(&coef));
            r += 1;
        }
    }
    s
}
