use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use super::gen::{GenId, Var};
use super::rat::{fmt_rat, Rat};
use super::RingError;

/// Sorted list of `(variable, exponent)` pairs with positive exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono(pub(crate) Vec<(Var, u32)>);

impl Mono {
    pub fn one() -> Self {
        Mono(Vec::new())
    }

    pub fn from_factors(mut factors: Vec<(Var, u32)>) -> Self {
        factors.retain(|&(_, e)| e > 0);
        factors.sort();
        let mut out: Vec<(Var, u32)> = Vec::with_capacity(factors.len());
        for (v, e) in factors {
            match out.last_mut() {
                Some((w, f)) if *w == v => *f += e,
                _ => out.push((v, e)),
            }
        }
        Mono(out)
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Mono(out)
    }

    /// Lower the exponent of `v` by one; `None` if `v` is absent.
    fn remove_one(&self, v: Var) -> Option<(u32, Mono)> {
        let pos = self.0.iter().position(|&(w, _)| w == v)?;
        let e = self.0[pos].1;
        let mut f = self.0.clone();
        if e == 1 {
            f.remove(pos);
        } else {
            f[pos].1 -= 1;
        }
        Some((e, Mono(f)))
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.iter().find(|&&(w, _)| w == v).map_or(0, |&(_, e)| e)
    }
}

/// A single term of a [`DiffPoly`], as exposed to callers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffMonomial {
    pub coeff: Rat,
    pub factors: Vec<(Var, u32)>,
}

/// Differential polynomial with exact rational coefficients, in canonical form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiffPoly {
    terms: BTreeMap<Mono, Rat>,
}

/// Conformal weight of a polynomial, in units of one half.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Weight {
    /// The zero polynomial has every weight.
    Any,
    Homogeneous(i64),
    NonHomogeneous,
}

impl DiffPoly {
    pub fn zero() -> Self {
        DiffPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = Self::zero();
        p.add_term(Mono::one(), c);
        p
    }

    pub fn int(c: i64) -> Self {
        Self::constant(super::rat::rat(c))
    }

    pub fn gen(g: GenId) -> Self {
        Self::var(Var::new(g, 0))
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Rat::one(), Mono(vec![(v, 1)]))
    }

    pub fn monomial(c: Rat, m: Mono) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Mono, Rat)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> Vec<DiffMonomial> {
        self.terms
            .iter()
            .map(|(m, c)| DiffMonomial { coeff: c.clone(), factors: m.0.clone() })
            .collect()
    }

    /// `Some(c)` when the polynomial is the constant `c`.
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => self.terms.get(&Mono::one()).cloned(),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn coeff(&self, m: &Mono) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &DiffPoly, c: &Rat) {
        if c.is_zero() {
            return;
        }
        for (m, d) in &other.terms {
            self.add_term(m.clone(), d * c);
        }
    }

    pub fn scale(&self, c: &Rat) -> DiffPoly {
        if c.is_zero() {
            return Self::zero();
        }
        DiffPoly { terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect() }
    }

    pub fn mul_mono(&self, m: &Mono, c: &Rat) -> DiffPoly {
        if c.is_zero() {
            return Self::zero();
        }
        DiffPoly { terms: self.terms.iter().map(|(n, d)| (n.mul(m), d * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> DiffPoly {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Total derivative.
    pub fn d(&self) -> DiffPoly {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            for (idx, &(v, e)) in m.0.iter().enumerate() {
                let mut f = m.0.clone();
                if e == 1 {
                    f.remove(idx);
                } else {
                    f[idx].1 -= 1;
                }
                f.push((v.raised(1), 1));
                out.add_term(Mono::from_factors(f), c * Rat::from_integer(e.into()));
            }
        }
        out
    }

    pub fn d_n(&self, n: u32) -> DiffPoly {
        let mut p = self.clone();
        for _ in 0..n {
            if p.is_zero() {
                break;
            }
            p = p.d();
        }
        p
    }

    /// Formal partial derivative with respect to the independent variable `v`.
    pub fn partial(&self, v: Var) -> DiffPoly {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if let Some((e, rest)) = m.remove_one(v) {
                out.add_term(rest, c * Rat::from_integer(e.into()));
            }
        }
        out
    }

    pub fn partial_gen(&self, g: GenId, n: u32) -> DiffPoly {
        self.partial(Var::new(g, n))
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.0.iter().map(|&(v, _)| v)).collect()
    }

    pub fn gens(&self) -> BTreeSet<GenId> {
        self.terms.keys().flat_map(|m| m.0.iter().map(|&(v, _)| v.gen)).collect()
    }

    /// Highest derivative order of `g` occurring, if any.
    pub fn max_order(&self, g: GenId) -> Option<u32> {
        self.vars().into_iter().filter(|v| v.gen == g).map(|v| v.ord).max()
    }

    /// The differential-algebra homomorphism sending each generator to its image.
    pub fn substitute(&self, images: &BTreeMap<GenId, DiffPoly>) -> Result<DiffPoly, RingError> {
        for g in self.gens() {
            if !images.contains_key(&g) {
                return Err(RingError::MissingImage(g));
            }
        }
        Ok(self.substitute_with(|g| images.get(&g).cloned()))
    }

    /// Like [`DiffPoly::substitute`], leaving generators without an image untouched.
    pub fn substitute_some(&self, images: &BTreeMap<GenId, DiffPoly>) -> DiffPoly {
        self.substitute_with(|g| images.get(&g).cloned())
    }

    pub fn substitute_with<F: Fn(GenId) -> Option<DiffPoly>>(&self, image: F) -> DiffPoly {
        let mut cache: HashMap<Var, Option<DiffPoly>> = HashMap::new();
        let mut base: HashMap<GenId, Option<DiffPoly>> = HashMap::new();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut kept: Vec<(Var, u32)> = Vec::new();
            let mut acc = DiffPoly::constant(c.clone());
            for &(v, e) in &m.0 {
                let img = cache
                    .entry(v)
                    .or_insert_with(|| {
                        base.entry(v.gen).or_insert_with(|| image(v.gen)).as_ref().map(|p| p.d_n(v.ord))
                    })
                    .clone();
                match img {
                    Some(p) => {
                        acc = &acc * &p.pow(e);
                        if acc.is_zero() {
                            break;
                        }
                    }
                    None => kept.push((v, e)),
                }
            }
            if !acc.is_zero() {
                out += &acc.mul_mono(&Mono(kept), &Rat::one());
            }
        }
        out
    }

    /// Common conformal weight, given doubled base weights of the generators.
    pub fn conformal_weight<F: Fn(GenId) -> i64>(&self, weight2: F) -> Weight {
        let mut found: Option<i64> = None;
        for m in self.terms.keys() {
            let w: i64 = m.0.iter().map(|&(v, e)| (weight2(v.gen) + 2 * v.ord as i64) * e as i64).sum();
            match found {
                None => found = Some(w),
                Some(x) if x != w => return Weight::NonHomogeneous,
                _ => {}
            }
        }
        found.map_or(Weight::Any, Weight::Homogeneous)
    }

    /// Restrict to the monomials accepted by `keep`.
    pub fn filter<F: Fn(&Mono) -> bool>(&self, keep: F) -> DiffPoly {
        DiffPoly { terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    pub fn latex(&self) -> String {
        self.render(true)
    }

    fn render(&self, latex: bool) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            let body: Vec<String> = m
                .0
                .iter()
                .map(|&(v, e)| {
                    let base = if latex { v.latex() } else { v.to_string() };
                    if e == 1 {
                        base
                    } else if latex {
                        format!("({})^{{{}}}", base, e)
                    } else {
                        format!("{}^{}", base, e)
                    }
                })
                .collect();
            let sep = if latex { " " } else { "*" };
            if m.is_one() {
                s.push_str(&fmt_rat(&a));
            } else if a.is_one() {
                s.push_str(&body.join(sep));
            } else if latex && !a.denom().is_one() {
                s.push_str(&format!("\\frac{{{}}}{{{}}}{}{}", a.numer(), a.denom(), sep, body.join(sep)));
            } else {
                s.push_str(&format!("{}{}{}", fmt_rat(&a), sep, body.join(sep)));
            }
        }
        s
    }
}

impl fmt::Display for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

impl AddAssign<&DiffPoly> for DiffPoly {
    fn add_assign(&mut self, rhs: &DiffPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&DiffPoly> for DiffPoly {
    fn sub_assign(&mut self, rhs: &DiffPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Add for &DiffPoly {
    type Output = DiffPoly;
    fn add(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &DiffPoly {
    type Output = DiffPoly;
    fn sub(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for DiffPoly {
    type Output = DiffPoly;
    fn add(mut self, rhs: DiffPoly) -> DiffPoly {
        self += &rhs;
        self
    }
}

impl Sub for DiffPoly {
    type Output = DiffPoly;
    fn sub(mut self, rhs: DiffPoly) -> DiffPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        DiffPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

impl Neg for DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        -&self
    }
}

impl Mul for &DiffPoly {
    type Output = DiffPoly;
    fn mul(self, rhs: &DiffPoly) -> DiffPoly {
        if self.is_zero() || rhs.is_zero() {
            return DiffPoly::zero();
        }
        let (small, big) = if self.len() <= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = DiffPoly::zero();
        for (m, c) in &small.terms {
            for (n, d) in &big.terms {
                out.add_term(m.mul(n), c * d);
            }
        }
        out
    }
}

impl Mul for DiffPoly {
    type Output = DiffPoly;
    fn mul(self, rhs: DiffPoly) -> DiffPoly {
        &self * &rhs
    }
}

impl From<Rat> for DiffPoly {
    fn from(c: Rat) -> Self {
        DiffPoly::constant(c)
    }
}
