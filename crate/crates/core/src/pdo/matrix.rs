use std::fmt;

use num_traits::Zero;

use crate::ring::{DiffPoly, Rat};

use super::linalg::RatMat;
use super::scalar::{max_floor, Pdo};

/// Matrix of pseudodifferential operators sharing one floor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatPdo {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<Pdo>,
}

impl MatPdo {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatPdo { rows, cols, entries: vec![Pdo::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_const(&RatMat::identity(n))
    }

    pub fn from_const(m: &RatMat) -> Self {
        let mut out = Self::zeros(m.rows, m.cols);
        for i in 0..m.rows {
            for j in 0..m.cols {
                if !m[(i, j)].is_zero() {
                    out.entries[i * m.cols + j] = Pdo::constant(DiffPoly::constant(m[(i, j)].clone()));
                }
            }
        }
        out
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Pdo>) -> Self {
        assert_eq!(entries.len(), rows * cols);
        MatPdo { rows, cols, entries }.normalized()
    }

    pub fn scalar(p: Pdo) -> Self {
        MatPdo { rows: 1, cols: 1, entries: vec![p] }
    }

    /// `C ∂^k` for a matrix of functions `C`, given row-major.
    pub fn term(rows: usize, cols: usize, c: &[DiffPoly], k: i64) -> Self {
        Self::from_entries(rows, cols, c.iter().map(|x| Pdo::term(x.clone(), k)).collect())
    }

    fn normalized(mut self) -> Self {
        let f = self.entries.iter().fold(None, |acc, e| max_floor(acc, e.floor()));
        if let Some(f) = f {
            for e in &mut self.entries {
                *e = e.with_floor(f);
            }
        }
        self
    }

    pub fn get(&self, i: usize, j: usize) -> &Pdo {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Pdo) {
        self.entries[i * self.cols + j] = p;
        let n = std::mem::replace(self, MatPdo::zeros(0, 0)).normalized();
        *self = n;
    }

    pub fn entries(&self) -> &[Pdo] {
        &self.entries
    }

    pub fn floor(&self) -> Option<i64> {
        self.entries.iter().fold(None, |acc, e| max_floor(acc, e.floor()))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn order(&self) -> Option<i64> {
        self.entries.iter().filter_map(Pdo::order).max()
    }

    pub fn low_degree(&self) -> Option<i64> {
        self.entries.iter().filter_map(Pdo::low_degree).min()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Pdo::is_zero)
    }

    /// Coefficient matrix of `∂^k`, row-major.
    pub fn coeff(&self, k: i64) -> Vec<DiffPoly> {
        self.entries.iter().map(|e| e.coeff(k)).collect()
    }

    /// Coefficient of `∂^k` if every entry is constant.
    pub fn const_coeff(&self, k: i64) -> Option<RatMat> {
        let mut m = RatMat::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self.get(i, j).coeff(k).as_constant()?;
            }
        }
        Some(m)
    }

    pub fn map<F: Fn(&Pdo) -> Pdo>(&self, f: F) -> MatPdo {
        MatPdo { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }.normalized()
    }

    pub fn map_coeffs<F: Fn(&DiffPoly) -> DiffPoly>(&self, f: F) -> MatPdo {
        self.map(|e| e.map_coeffs(&f))
    }

    pub fn with_floor(&self, f: i64) -> MatPdo {
        self.map(|e| e.with_floor(f))
    }

    pub fn assume_exact(&self) -> MatPdo {
        self.map(Pdo::assume_exact)
    }

    pub fn add(&self, other: &MatPdo) -> MatPdo {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        MatPdo {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect(),
        }
        .normalized()
    }

    pub fn neg(&self) -> MatPdo {
        self.map(Pdo::neg)
    }

    pub fn sub(&self, other: &MatPdo) -> MatPdo {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> MatPdo {
        self.map(|e| e.scale(c))
    }

    pub fn transpose(&self) -> MatPdo {
        let mut out = MatPdo::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        out
    }

    /// Composition `self ∘ other` down to `floor` (or the natural floor).
    pub fn mul_to(&self, other: &MatPdo, floor: Option<i64>) -> MatPdo {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut fl = floor;
        // A common floor for every entry: use the coarsest natural floor over all products.
        for i in 0..self.rows {
            for j in 0..other.cols {
                for k in 0..self.cols {
                    fl = max_floor(fl, self.get(i, k).natural_product_floor(other.get(k, j)));
                }
            }
        }
        let cells: Vec<(usize, usize)> =
            (0..self.rows).flat_map(|i| (0..other.cols).map(move |j| (i, j))).collect();
        let compute = |&(i, j): &(usize, usize)| {
            let mut acc = match fl {
                Some(f) => Pdo::zero().with_floor(f),
                None => Pdo::zero(),
            };
            for k in 0..self.cols {
                let (a, b) = (self.get(i, k), other.get(k, j));
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                acc = acc.add(&a.mul_to(b, fl));
            }
            acc
        };
        let entries: Vec<Pdo> = if cells.len() > 4 {
            use rayon::prelude::*;
            cells.par_iter().map(compute).collect()
        } else {
            cells.iter().map(compute).collect()
        };
        MatPdo { rows: self.rows, cols: other.cols, entries }.normalized()
    }

    pub fn mul(&self, other: &MatPdo) -> MatPdo {
        self.mul_to(other, None)
    }

    pub fn pow_to(&self, n: u32, floor: Option<i64>) -> MatPdo {
        let mut acc = MatPdo::identity(self.rows);
        let ord = self.order().unwrap_or(0);
        for i in 1..=n as i64 {
            acc = acc.mul_to(self, floor.map(|f| f - (n as i64 - i) * ord));
        }
        acc
    }

    pub fn lmul_const(&self, m: &RatMat) -> MatPdo {
        MatPdo::from_const(m).mul(self)
    }

    pub fn rmul_const(&self, m: &RatMat) -> MatPdo {
        self.mul(&MatPdo::from_const(m))
    }

    /// Adjoint: transpose and take the adjoint of each entry.
    pub fn adjoint_to(&self, floor: Option<i64>) -> MatPdo {
        self.transpose().map(|e| e.adjoint_to(floor))
    }

    pub fn plus_part(&self) -> MatPdo {
        self.map(Pdo::plus_part)
    }

    pub fn minus_part(&self) -> MatPdo {
        self.map(Pdo::minus_part)
    }

    pub fn trace(&self) -> Pdo {
        assert!(self.is_square());
        (0..self.rows).fold(Pdo::zero(), |acc, i| acc.add(self.get(i, i)))
    }

    /// Rows `r0..r1` and columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> MatPdo {
        let mut out = MatPdo::zeros(r1 - r0, c1 - c0);
        for i in r0..r1 {
            for j in c0..c1 {
                out.entries[(i - r0) * (c1 - c0) + (j - c0)] = self.get(i, j).clone();
            }
        }
        out.normalized()
    }

    /// Assemble from a 2x2 grid of blocks.
    pub fn from_blocks(a: &MatPdo, b: &MatPdo, c: &MatPdo, d: &MatPdo) -> MatPdo {
        let (r1, r2, c1, c2) = (a.rows, c.rows, a.cols, b.cols);
        let mut out = MatPdo::zeros(r1 + r2, c1 + c2);
        for i in 0..r1 + r2 {
            for j in 0..c1 + c2 {
                let e = match (i < r1, j < c1) {
                    (true, true) => a.get(i, j),
                    (true, false) => b.get(i, j - c1),
                    (false, true) => c.get(i - r1, j),
                    (false, false) => d.get(i - r1, j - c1),
                };
                out.entries[i * (c1 + c2) + j] = e.clone();
            }
        }
        out.normalized()
    }

    pub fn agrees(&self, other: &MatPdo) -> bool {
        self.mismatch(other).is_none()
    }

    /// First differing entry `(i, j, degree, difference)` on commonly known degrees.
    pub fn mismatch(&self, other: &MatPdo) -> Option<(usize, usize, i64, DiffPoly)> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Some((usize::MAX, usize::MAX, 0, DiffPoly::zero()));
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                if let Some((k, d)) = self.get(i, j).mismatch(other.get(i, j)) {
                    return Some((i, j, k, d));
                }
            }
        }
        None
    }

    pub fn latex(&self) -> String {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).latex()).collect::<Vec<_>>().join(" & "))
            .collect();
        format!("\\begin{{pmatrix}} {} \\end{{pmatrix}}", rows.join(" \\\\ "))
    }
}

impl fmt::Display for MatPdo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(" | "))?;
        }
        Ok(())
    }
}
