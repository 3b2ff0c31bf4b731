use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Map, Value};

use crate::ring::{binom, sign_pow, DiffPoly, Rat};

/// Polynomial in `λ` with coefficients in the differential algebra.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LambdaPoly {
    coeffs: BTreeMap<u32, DiffPoly>,
}

impl LambdaPoly {
    pub fn zero() -> Self {
        LambdaPoly::default()
    }

    pub fn constant(c: DiffPoly) -> Self {
        let mut p = Self::zero();
        p.add_coeff(0, &c);
        p
    }

    /// `c λ^k`.
    pub fn term(c: DiffPoly, k: u32) -> Self {
        let mut p = Self::zero();
        p.add_coeff(k, &c);
        p
    }

    pub fn from_coeffs<I: IntoIterator<Item = (u32, DiffPoly)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (k, c) in it {
            p.add_coeff(k, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, k: u32) -> DiffPoly {
        self.coeffs.get(&k).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (u32, &DiffPoly)> {
        self.coeffs.iter().map(|(&k, c)| (k, c))
    }

    pub fn add_coeff(&mut self, k: u32, c: &DiffPoly) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(k).or_default();
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn add_assign(&mut self, other: &LambdaPoly) {
        for (&k, c) in &other.coeffs {
            self.add_coeff(k, c);
        }
    }

    pub fn add(&self, other: &LambdaPoly) -> LambdaPoly {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &LambdaPoly) -> LambdaPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LambdaPoly {
        self.map(|c| -c)
    }

    pub fn scale(&self, r: &Rat) -> LambdaPoly {
        self.map(|c| c.scale(r))
    }

    pub fn lmul(&self, f: &DiffPoly) -> LambdaPoly {
        self.map(|c| f * c)
    }

    pub fn map<F: Fn(&DiffPoly) -> DiffPoly>(&self, f: F) -> LambdaPoly {
        LambdaPoly::from_coeffs(self.coeffs.iter().map(|(&k, c)| (k, f(c))))
    }

    /// Value at `λ = 0`.
    pub fn at_zero(&self) -> DiffPoly {
        self.coeff(0)
    }

    /// `(λ + ∂)^n` applied to this polynomial, `∂` acting on the coefficients.
    pub fn shift_apply(&self, n: u32) -> LambdaPoly {
        if n == 0 {
            return self.clone();
        }
        let mut out = LambdaPoly::zero();
        for (&s, c) in &self.coeffs {
            let mut dc = c.clone();
            for t in 0..=n {
                if dc.is_zero() {
                    break;
                }
                out.add_coeff(s + n - t, &dc.scale(&binom(n as i64, t)));
                dc = dc.d();
            }
        }
        out
    }

    /// `(-λ - ∂)^m f` for a function `f`.
    pub fn neg_shift_of(f: &DiffPoly, m: u32) -> LambdaPoly {
        let sign = sign_pow(m as i64);
        let mut out = LambdaPoly::zero();
        let mut df = f.clone();
        for t in 0..=m {
            if df.is_zero() {
                break;
            }
            out.add_coeff(m - t, &df.scale(&(&sign * binom(m as i64, t))));
            df = df.d();
        }
        out
    }

    /// Replace `λ` by `-λ - ∂`, with `∂` acting on the coefficients.
    pub fn flip(&self) -> LambdaPoly {
        let mut out = LambdaPoly::zero();
        for (&p, c) in &self.coeffs {
            out.add_assign(&LambdaPoly::neg_shift_of(c, p));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (&k, c) in &self.coeffs {
            m.insert(k.to_string(), c.to_json());
        }
        json!(m)
    }

    pub fn latex(&self) -> String {
        render(self, true)
    }
}

fn render(p: &LambdaPoly, latex: bool) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let lam = if latex { "\\lambda" } else { "λ" };
    let parts: Vec<String> = p
        .coeffs
        .iter()
        .rev()
        .map(|(&k, c)| {
            let cs = if latex { c.latex() } else { c.to_string() };
            let l = match k {
                0 => String::new(),
                1 => lam.to_string(),
                k if latex => format!("{}^{{{}}}", lam, k),
                k => format!("{}^{}", lam, k),
            };
            if l.is_empty() {
                cs
            } else if c.as_constant() == Some(crate::ring::rat(1)) {
                l
            } else if c.len() == 1 {
                format!("{}{}", cs, l)
            } else {
                format!("({}){}", cs, l)
            }
        })
        .collect();
    parts.join(" + ")
}

impl fmt::Display for LambdaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self, false))
    }
}

/// Polynomial in two commuting symbols `λ`, `μ`; used by the Jacobi identity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Lambda2 {
    coeffs: BTreeMap<(u32, u32), DiffPoly>,
}

impl Lambda2 {
    pub fn add_coeff(&mut self, k: (u32, u32), c: &DiffPoly) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(k).or_default();
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn sub(&self, other: &Lambda2) -> Lambda2 {
        let mut out = self.clone();
        for (&k, c) in &other.coeffs {
            out.add_coeff(k, &-c);
        }
        out
    }
}

impl fmt::Display for Lambda2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.coeffs.iter().map(|((a, b), c)| format!("({})λ^{}μ^{}", c, a, b)).collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}
