use std::fmt;

use num_traits::{One, Zero};

use crate::ring::{fmt_rat, rat, Rat};

/// Dense matrix with rational entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rat>,
}

impl RatMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMat { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        RatMat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
    }

    /// Matrix with a single entry 1 at `(i, j)`.
    pub fn unit(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        m[(i, j)] = Rat::one();
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMat) -> RatMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &RatMat) -> RatMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, c: &Rat) -> RatMat {
        RatMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (RatMat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else { continue };
            m.swap_rows(row, p);
            let inv = m[(row, col)].recip();
            for j in 0..m.cols {
                let v = &m[(row, j)] * &inv;
                m[(row, j)] = v;
            }
            for r in 0..m.rows {
                if r != row && !m[(r, col)].is_zero() {
                    let f = m[(r, col)].clone();
                    for j in 0..m.cols {
                        let v = &m[(row, j)] * &f;
                        m[(r, j)] -= v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn inverse(&self) -> Option<RatMat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rat::one();
        }
        let (r, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    /// Factor `self = I J` with `I` of full column rank and `J` of full row rank,
    /// `J` being the nonzero rows of the reduced row echelon form.
    pub fn rank_factorization(&self) -> (RatMat, RatMat) {
        let (r, piv) = self.rref();
        let k = piv.len();
        let mut i_mat = Self::zeros(self.rows, k);
        let mut j_mat = Self::zeros(k, self.cols);
        for (t, &c) in piv.iter().enumerate() {
            for row in 0..self.rows {
                i_mat[(row, t)] = self[(row, c)].clone();
            }
            for col in 0..self.cols {
                j_mat[(t, col)] = r[(t, col)].clone();
            }
        }
        (i_mat, j_mat)
    }

    /// Invertible `P`, `Q` with `P * self * Q = diag(1_r, 0)`.
    pub fn normal_form(&self) -> (RatMat, RatMat, usize) {
        let n = self.rows;
        let mut aug = Self::zeros(n, self.cols + n);
        for i in 0..n {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols + i)] = Rat::one();
        }
        let (r, piv) = aug.rref();
        let rank = piv.iter().filter(|&&c| c < self.cols).count();
        let mut p = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                p[(i, j)] = r[(i, self.cols + j)].clone();
            }
        }
        // P * self is in reduced echelon form; clear the remaining columns with Q.
        let e = p.mul(self);
        let mut order: Vec<usize> = piv.iter().copied().filter(|&c| c < self.cols).collect();
        let rest: Vec<usize> = (0..self.cols).filter(|c| !order.contains(c)).collect();
        order.extend(rest);
        let mut q = Self::zeros(self.cols, self.cols);
        for (t, &c) in order.iter().enumerate() {
            q[(c, t)] = Rat::one();
        }
        for t in 0..rank {
            for s in rank..self.cols {
                let c = order[s];
                let v = e[(t, c)].clone();
                if !v.is_zero() {
                    q[(order[t], s)] -= v;
                }
            }
        }
        (p, q, rank)
    }
}

impl std::ops::Index<(usize, usize)> for RatMat {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for RatMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| fmt_rat(&self[(i, j)])).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
