use std::collections::BTreeMap;
use std::fmt;


use crate::ring::{binom, rat, sign_pow, DiffPoly, Rat};

use super::PdoError;

/// Scalar pseudodifferential operator `sum_k c_k ∂^k`.
///
/// `floor: Some(f)` means only the coefficients of degree `>= f` are known; `None` means the
/// operator is exact (every coefficient not stored is zero).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Pdo {
    coeffs: BTreeMap<i64, DiffPoly>,
    floor: Option<i64>,
}

pub(crate) fn max_floor(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl Pdo {
    pub fn zero() -> Self {
        Pdo::default()
    }

    pub fn one() -> Self {
        Self::term(DiffPoly::one(), 0)
    }

    /// `c ∂^k`.
    pub fn term(c: DiffPoly, k: i64) -> Self {
        let mut p = Self::zero();
        p.add_coeff(k, &c);
        p
    }

    /// `∂^k`.
    pub fn d_pow(k: i64) -> Self {
        Self::term(DiffPoly::one(), k)
    }

    /// `(-∂)^k`.
    pub fn neg_d_pow(k: i64) -> Self {
        Self::term(DiffPoly::constant(sign_pow(k)), k)
    }

    pub fn constant(c: DiffPoly) -> Self {
        Self::term(c, 0)
    }

    pub fn from_coeffs<I: IntoIterator<Item = (i64, DiffPoly)>>(it: I, floor: Option<i64>) -> Self {
        let mut p = Pdo { coeffs: BTreeMap::new(), floor };
        for (k, c) in it {
            p.add_coeff(k, &c);
        }
        p.truncate_below_floor();
        p
    }

    pub fn floor(&self) -> Option<i64> {
        self.floor
    }

    pub fn is_exact(&self) -> bool {
        self.floor.is_none()
    }

    /// Highest degree with a nonzero coefficient.
    pub fn order(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Lowest degree with a nonzero coefficient.
    pub fn low_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Largest degree a possibly unknown part could reach.
    fn upper(&self) -> Option<i64> {
        match (self.order(), self.floor) {
            (Some(o), Some(f)) => Some(o.max(f - 1)),
            (Some(o), None) => Some(o),
            (None, Some(f)) => Some(f - 1),
            (None, None) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: i64) -> DiffPoly {
        self.coeffs.get(&k).cloned().unwrap_or_default()
    }

    pub fn coeff_ref(&self, k: i64) -> Option<&DiffPoly> {
        self.coeffs.get(&k)
    }

    pub fn coeffs(&self) -> impl DoubleEndedIterator<Item = (i64, &DiffPoly)> {
        self.coeffs.iter().map(|(&k, c)| (k, c))
    }

    pub fn add_coeff(&mut self, k: i64, c: &DiffPoly) {
        if c.is_zero() || self.floor.is_some_and(|f| k < f) {
            return;
        }
        let e = self.coeffs.entry(k).or_default();
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    fn truncate_below_floor(&mut self) {
        if let Some(f) = self.floor {
            self.coeffs = self.coeffs.split_off(&f);
        }
    }

    /// Forget every coefficient below `f`.
    pub fn with_floor(&self, f: i64) -> Pdo {
        let mut p = self.clone();
        p.floor = max_floor(p.floor, Some(f));
        p.truncate_below_floor();
        p
    }

    /// Declare the operator exact, dropping its floor.
    pub fn assume_exact(&self) -> Pdo {
        Pdo { coeffs: self.coeffs.clone(), floor: None }
    }

    pub fn map_coeffs<F: Fn(&DiffPoly) -> DiffPoly>(&self, f: F) -> Pdo {
        Pdo::from_coeffs(self.coeffs.iter().map(|(&k, c)| (k, f(c))), self.floor)
    }

    pub fn scale(&self, c: &Rat) -> Pdo {
        self.map_coeffs(|p| p.scale(c))
    }

    /// Left multiplication by a function `c`.
    pub fn lmul(&self, c: &DiffPoly) -> Pdo {
        self.map_coeffs(|p| c * p)
    }

    pub fn add(&self, other: &Pdo) -> Pdo {
        let mut out = Pdo { coeffs: self.coeffs.clone(), floor: max_floor(self.floor, other.floor) };
        out.truncate_below_floor();
        for (&k, c) in &other.coeffs {
            out.add_coeff(k, c);
        }
        out
    }

    pub fn neg(&self) -> Pdo {
        self.map_coeffs(|p| -p)
    }

    pub fn sub(&self, other: &Pdo) -> Pdo {
        self.add(&other.neg())
    }

    /// Floor below which the product `self ∘ other` is not determined by the known parts.
    pub fn natural_product_floor(&self, other: &Pdo) -> Option<i64> {
        let left = match (self.floor, other.upper()) {
            (Some(f), Some(u)) => Some(f + u),
            _ => None,
        };
        let right = match (self.upper(), other.floor) {
            (Some(u), Some(f)) => Some(u + f),
            _ => None,
        };
        max_floor(left, right)
    }

    /// `self ∘ other`, keeping degrees `>= floor` (and any coarser floor forced by the operands).
    pub fn mul_to(&self, other: &Pdo, floor: Option<i64>) -> Pdo {
        let eff = max_floor(self.natural_product_floor(other), floor);
        if eff.is_none() && self.low_degree().is_some_and(|k| k < 0) && !other.is_zero() {
            panic!("exact product with negative powers on the left needs a floor");
        }
        let mut out = Pdo { coeffs: BTreeMap::new(), floor: eff };
        let Some(ob) = other.order() else { return out };
        let mut derivs: BTreeMap<i64, Vec<DiffPoly>> =
            other.coeffs.iter().map(|(&j, c)| (j, vec![c.clone()])).collect();
        for (&i, a) in self.coeffs.iter().rev() {
            if eff.is_some_and(|f| i + ob < f) {
                break;
            }
            for (&j, dv) in derivs.iter_mut() {
                let mut l: u32 = 0;
                loop {
                    let deg = i + j - l as i64;
                    if eff.is_some_and(|f| deg < f) || (i >= 0 && l as i64 > i) {
                        break;
                    }
                    while dv.len() <= l as usize {
                        let next = dv.last().unwrap().d();
                        dv.push(next);
                    }
                    let b = &dv[l as usize];
                    if b.is_zero() {
                        break;
                    }
                    let c = binom(i, l);
                    out.add_coeff(deg, &(a * b).scale(&c));
                    l += 1;
                }
            }
        }
        out
    }

    /// `self ∘ other` at the natural floor; panics if the exact product is an infinite series.
    pub fn mul(&self, other: &Pdo) -> Pdo {
        self.mul_to(other, None)
    }

    pub fn pow_to(&self, n: u32, floor: Option<i64>) -> Pdo {
        let mut acc = Pdo::one();
        let ord = self.order().unwrap_or(0);
        for i in 1..=n as i64 {
            acc = acc.mul_to(self, floor.map(|f| f - (n as i64 - i) * ord));
        }
        acc
    }

    /// Formal adjoint, `(c ∂^k)^* = (-∂)^k ∘ c`.
    pub fn adjoint_to(&self, floor: Option<i64>) -> Pdo {
        let eff = max_floor(self.floor, floor);
        if eff.is_none() && self.low_degree().is_some_and(|k| k < 0) {
            panic!("exact adjoint with negative powers needs a floor");
        }
        let mut out = Pdo { coeffs: BTreeMap::new(), floor: eff };
        for (&k, c) in &self.coeffs {
            let s = sign_pow(k);
            let mut dc = c.clone();
            let mut l: u32 = 0;
            loop {
                let deg = k - l as i64;
                if eff.is_some_and(|f| deg < f) || (k >= 0 && l as i64 > k) || dc.is_zero() {
                    break;
                }
                out.add_coeff(deg, &dc.scale(&(&s * binom(k, l))));
                dc = dc.d();
                l += 1;
            }
        }
        out
    }

    pub fn adjoint(&self) -> Pdo {
        self.adjoint_to(None)
    }

    /// Coefficient of `∂^{-1}`.
    pub fn residue(&self) -> Result<DiffPoly, PdoError> {
        match self.floor {
            Some(f) if f > -1 => Err(PdoError::FloorTooHigh { floor: f, needed: -1 }),
            _ => Ok(self.coeff(-1)),
        }
    }

    /// Differential part (degrees `>= 0`); always exact.
    pub fn plus_part(&self) -> Pdo {
        if let Some(f) = self.floor {
            assert!(f <= 0, "differential part not determined above floor {}", f);
        }
        Pdo { coeffs: self.coeffs.range(0..).map(|(&k, c)| (k, c.clone())).collect(), floor: None }
    }

    pub fn minus_part(&self) -> Pdo {
        Pdo { coeffs: self.coeffs.range(..0).map(|(&k, c)| (k, c.clone())).collect(), floor: self.floor }
    }

    /// Equality on the degrees known for both operands.
    pub fn agrees(&self, other: &Pdo) -> bool {
        self.mismatch(other).is_none()
    }

    /// First degree (from the top) where the two operators differ on known coefficients.
    pub fn mismatch(&self, other: &Pdo) -> Option<(i64, DiffPoly)> {
        let f = max_floor(self.floor, other.floor);
        let mut degs: Vec<i64> = self.coeffs.keys().chain(other.coeffs.keys()).copied().collect();
        degs.sort_unstable();
        degs.dedup();
        for &k in degs.iter().rev() {
            if f.is_some_and(|f| k < f) {
                continue;
            }
            let d = &self.coeff(k) - &other.coeff(k);
            if !d.is_zero() {
                return Some((k, d));
            }
        }
        None
    }

    pub fn latex(&self) -> String {
        render(self, true)
    }
}

fn render(p: &Pdo, latex: bool) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (&k, c) in p.coeffs.iter().rev() {
        let cs = if latex { c.latex() } else { c.to_string() };
        let dpart = match (k, latex) {
            (0, _) => String::new(),
            (1, true) => "\\partial".into(),
            (1, false) => "d".into(),
            (k, true) => format!("\\partial^{{{}}}", k),
            (k, false) => format!("d^{}", k),
        };
        let piece = if dpart.is_empty() {
            if c.len() > 1 { format!("({})", cs) } else { cs }
        } else if c.as_constant() == Some(rat(1)) {
            dpart
        } else if c.as_constant() == Some(rat(-1)) {
            format!("-{}", dpart)
        } else if c.len() > 1 {
            format!("({}){}{}", cs, if latex { " " } else { "*" }, dpart)
        } else {
            format!("{}{}{}", cs, if latex { " " } else { "*" }, dpart)
        };
        parts.push(piece);
    }
    let mut s = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
    if let Some(f) = p.floor {
        if latex {
            s.push_str(&format!(" + O(\\partial^{{{}}})", f - 1));
        } else {
            s.push_str(&format!(" + O(d^{})", f - 1));
        }
    }
    s
}

impl fmt::Display for Pdo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self, false))
    }
}

impl From<DiffPoly> for Pdo {
    fn from(c: DiffPoly) -> Self {
        Pdo::constant(c)
    }
}
