use std::collections::{BTreeMap, BTreeSet};

use crate::ring::{DiffPoly, GenId, Rat};

use super::lambda::LambdaPoly;
use super::PvaError;

/// A λ-bracket on the differential algebra.
pub trait LambdaBracket: Sync {
    fn bracket(&self, f: &DiffPoly, g: &DiffPoly) -> Result<LambdaPoly, PvaError>;
}

/// λ-brackets between generators; extended to all of the algebra by the master formula.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BracketTable {
    gens: BTreeSet<GenId>,
    entries: BTreeMap<(GenId, GenId), LambdaPoly>,
}

impl BracketTable {
    pub fn new<I: IntoIterator<Item = GenId>>(gens: I) -> Self {
        BracketTable { gens: gens.into_iter().collect(), entries: BTreeMap::new() }
    }

    pub fn gens(&self) -> &BTreeSet<GenId> {
        &self.gens
    }

    pub fn set(&mut self, a: GenId, b: GenId, value: LambdaPoly) {
        assert!(self.gens.contains(&a) && self.gens.contains(&b), "generator not declared");
        if value.is_zero() {
            self.entries.remove(&(a, b));
        } else {
            self.entries.insert((a, b), value);
        }
    }

    pub fn get(&self, a: GenId, b: GenId) -> Result<LambdaPoly, PvaError> {
        if !self.gens.contains(&a) {
            return Err(PvaError::MissingEntry(a, b));
        }
        if !self.gens.contains(&b) {
            return Err(PvaError::MissingEntry(a, b));
        }
        Ok(self.entries.get(&(a, b)).cloned().unwrap_or_default())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn scale(&self, c: &Rat) -> BracketTable {
        let mut out = BracketTable::new(self.gens.iter().copied());
        for (&(a, b), v) in &self.entries {
            out.set(a, b, v.scale(c));
        }
        out
    }

    pub fn add(&self, other: &BracketTable) -> BracketTable {
        let mut out = BracketTable::new(self.gens.union(&other.gens).copied());
        for (&(a, b), v) in self.entries.iter().chain(other.entries.iter()) {
            let cur = out.entries.get(&(a, b)).cloned().unwrap_or_default();
            out.set(a, b, cur.add(v));
        }
        out
    }

    /// The same table with the sign of entry `(a, b)` flipped; a negative control.
    pub fn corrupted(&self, a: GenId, b: GenId) -> BracketTable {
        let mut out = self.clone();
        let v = self.get(a, b).unwrap_or_default();
        out.set(a, b, v.neg());
        out
    }

    /// Some nonzero entry, the natural target for [`BracketTable::corrupted`].
    pub fn first_nonzero(&self) -> Option<(GenId, GenId)> {
        self.entries.keys().next().copied()
    }

    /// `{f_λ g}` by the master formula
    /// `Σ ∂g/∂u_j^{(n)} (λ+∂)^n {u_i_{λ+∂} u_j}_→ (-λ-∂)^m ∂f/∂u_i^{(m)}`.
    pub fn extend(&self, f: &DiffPoly, g: &DiffPoly) -> Result<LambdaPoly, PvaError> {
        let fvars = f.vars();
        let gvars = g.vars();
        if fvars.is_empty() || gvars.is_empty() {
            return Ok(LambdaPoly::zero());
        }
        // P_i = Σ_m (-λ-∂)^m ∂f/∂u_i^{(m)}
        let mut p_by_gen: BTreeMap<GenId, LambdaPoly> = BTreeMap::new();
        for v in &fvars {
            let part = f.partial(*v);
            p_by_gen.entry(v.gen).or_default().add_assign(&LambdaPoly::neg_shift_of(&part, v.ord));
        }
        let gens_g: BTreeSet<GenId> = gvars.iter().map(|v| v.gen).collect();
        let mut out = LambdaPoly::zero();
        for gj in gens_g {
            // R_j = Σ_i {u_i_{λ+∂} u_j}_→ P_i
            let mut r = LambdaPoly::zero();
            for (&gi, p) in &p_by_gen {
                let b = self.get(gi, gj)?;
                for (k, c) in b.coeffs() {
                    r.add_assign(&p.shift_apply(k).lmul(c));
                }
            }
            if r.is_zero() {
                continue;
            }
            for v in gvars.iter().filter(|v| v.gen == gj) {
                let part = g.partial(*v);
                out.add_assign(&r.shift_apply(v.ord).lmul(&part));
            }
        }
        Ok(out)
    }
}

impl LambdaBracket for BracketTable {
    fn bracket(&self, f: &DiffPoly, g: &DiffPoly) -> Result<LambdaPoly, PvaError> {
        self.extend(f, g)
    }
}

/// The opposite bracket `-{·_λ·}`.
pub struct Negated<'a, B: LambdaBracket + ?Sized>(pub &'a B);

impl<B: LambdaBracket + ?Sized> LambdaBracket for Negated<'_, B> {
    fn bracket(&self, f: &DiffPoly, g: &DiffPoly) -> Result<LambdaPoly, PvaError> {
        Ok(self.0.bracket(f, g)?.neg())
    }
}

/// A pencil `{·_λ·}_0 + ε{·_λ·}_1` stored as its two parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketPencil {
    pub bracket0: BracketTable,
    pub bracket1: BracketTable,
}

impl BracketPencil {
    /// The member of the pencil at `ε`.
    pub fn at(&self, eps: &Rat) -> BracketTable {
        self.bracket0.add(&self.bracket1.scale(eps))
    }
}
