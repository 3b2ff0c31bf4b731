use std::collections::HashMap;

use crate::pdo::RatMat;
use crate::ring::{rat, Cell, GenId};

use super::WalgError;

/// The pyramid of a partition `p_1 >= ... >= p_r` of `N`, with boxes `(i, h)`, `1 <= h <= p_i`.
///
/// Boxes are numbered row by row; this numbering fixes the matrix positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pyramid {
    parts: Vec<u16>,
    cells: Vec<Cell>,
    index: HashMap<Cell, usize>,
}

impl Pyramid {
    pub fn new(parts: &[u16]) -> Result<Pyramid, WalgError> {
        if parts.is_empty() || parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(WalgError::BadPartition(parts.to_vec()));
        }
        let mut cells = Vec::new();
        for (i, &p) in parts.iter().enumerate() {
            for h in 1..=p {
                cells.push((i as u16 + 1, h));
            }
        }
        let index = cells.iter().enumerate().map(|(n, &c)| (c, n)).collect();
        Ok(Pyramid { parts: parts.to_vec(), cells, index })
    }

    pub fn parts(&self) -> &[u16] {
        &self.parts
    }

    /// `p_i`, 1-based.
    pub fn part(&self, i: u16) -> u16 {
        self.parts[i as usize - 1]
    }

    pub fn n(&self) -> usize {
        self.cells.len()
    }

    pub fn r(&self) -> u16 {
        self.parts.len() as u16
    }

    /// Number of rows of maximal length.
    pub fn r1(&self) -> u16 {
        self.parts.iter().filter(|&&p| p == self.parts[0]).count() as u16
    }

    pub fn p1(&self) -> u16 {
        self.parts[0]
    }

    /// Depth of the grading, `p_1 - 1`.
    pub fn depth(&self) -> u16 {
        self.parts[0] - 1
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn idx(&self, c: Cell) -> usize {
        self.index[&c]
    }

    pub fn cell(&self, n: usize) -> Cell {
        self.cells[n]
    }

    /// Twice the `ad x` eigenvalue of `E_{ab}`: `(p_i - p_j) - 2(h - k)`.
    pub fn grade2(&self, a: Cell, b: Cell) -> i64 {
        (self.part(a.0) as i64 - self.part(b.0) as i64) - 2 * (a.1 as i64 - b.1 as i64)
    }

    /// Twice the conformal weight `1 - s` of the variable `q_{ab}` when `E_{ab}` has degree `s`.
    pub fn weight2(&self, a: Cell, b: Cell) -> i64 {
        2 - self.grade2(a, b)
    }

    /// All pairs of boxes, in canonical order.
    pub fn pairs(&self) -> impl Iterator<Item = (Cell, Cell)> + '_ {
        self.cells.iter().flat_map(move |&a| self.cells.iter().map(move |&b| (a, b)))
    }

    /// Variables `q_{ab}` of the whole of `gl_N`.
    pub fn all_vars(&self) -> Vec<GenId> {
        self.pairs().map(|(a, b)| GenId::Q(a, b)).collect()
    }

    /// Variables `q_{ab}` with `E_{ab}` of degree `<= 1/2`.
    pub fn low_vars(&self) -> Vec<GenId> {
        self.pairs().filter(|&(a, b)| self.grade2(a, b) <= 1).map(|(a, b)| GenId::Q(a, b)).collect()
    }

    /// Basis `E_{ab}` of `g_{>=1/2}`.
    pub fn high_basis(&self) -> Vec<(Cell, Cell)> {
        self.pairs().filter(|&(a, b)| self.grade2(a, b) >= 1).collect()
    }

    /// `f = Σ E_{(i,h+1),(ih)}`.
    pub fn f(&self) -> RatMat {
        let mut m = RatMat::zeros(self.n(), self.n());
        for &(i, h) in &self.cells {
            if h < self.part(i) {
                m[(self.idx((i, h + 1)), self.idx((i, h)))] = rat(1);
            }
        }
        m
    }

    /// Diagonal element `x` with eigenvalue `(p_i + 1 - 2h)/2` on box `(i, h)`.
    pub fn x(&self) -> RatMat {
        let mut m = RatMat::zeros(self.n(), self.n());
        for &(i, h) in &self.cells {
            m[(self.idx((i, h)), self.idx((i, h)))] = crate::ring::ratio(self.part(i) as i64 + 1 - 2 * h as i64, 2);
        }
        m
    }

    /// Elementary matrix `E_{ab}`.
    pub fn e(&self, a: Cell, b: Cell) -> RatMat {
        RatMat::unit(self.n(), self.n(), self.idx(a), self.idx(b))
    }

    /// Index triples `(i, j, k)` of the generators `w_{ij;k}`, `0 <= k < min(p_i, p_j)`.
    pub fn w_indices(&self) -> Vec<(u16, u16, u16)> {
        let r = self.r();
        let mut v = Vec::new();
        for i in 1..=r {
            for j in 1..=r {
                for k in 0..self.part(i).min(self.part(j)) {
                    v.push((i, j, k));
                }
            }
        }
        v
    }

    /// Centralizer basis element `f_{ij;k} = Σ_{h=0}^{k} E_{(i,p_i+h-k),(j,h+1)}`.
    pub fn f_ijk(&self, i: u16, j: u16, k: u16) -> Vec<(Cell, Cell)> {
        let pi = self.part(i);
        (0..=k).map(|h| ((i, pi + h - k), (j, h + 1))).collect()
    }

    /// Slice basis element `E_{(j1),(i,p_i-k)}` dual to `f_{ij;k}`.
    pub fn u_ijk(&self, i: u16, j: u16, k: u16) -> (Cell, Cell) {
        ((j, 1), (i, self.part(i) - k))
    }

    /// The variable `q_{(i,p_i-k),(j1)}` paired with `w_{ij;k}`, if `(a, b)` is of that form.
    pub fn paired_index(&self, a: Cell, b: Cell) -> Option<(u16, u16, u16)> {
        if b.1 != 1 {
            return None;
        }
        let (i, j) = (a.0, b.0);
        let k = self.part(i) - a.1;
        (k < self.part(i).min(self.part(j))).then_some((i, j, k))
    }

    /// Torus charge of `q_{ab}`: `e_i - e_j` for rows `i`, `j`.
    pub fn charge(&self, a: Cell, b: Cell) -> (u16, u16) {
        (a.0, b.0)
    }

    /// `S = Σ s_ij E_{(i1),(j p_1)}` for an `r_1 x r_1` matrix `s`.
    pub fn s_from_sbar(&self, sbar: &RatMat) -> Result<RatMat, WalgError> {
        let r1 = self.r1() as usize;
        if sbar.rows != r1 || sbar.cols != r1 {
            return Err(WalgError::SbarShape { expected: r1, rows: sbar.rows, cols: sbar.cols });
        }
        let mut s = RatMat::zeros(self.n(), self.n());
        let p1 = self.p1();
        for i in 0..r1 {
            for j in 0..r1 {
                s[(self.idx((i as u16 + 1, 1)), self.idx((j as u16 + 1, p1)))] = sbar[(i, j)].clone();
            }
        }
        Ok(s)
    }

    /// `I_1 = Σ E_{(i1),i}`.
    pub fn i1(&self) -> RatMat {
        let r1 = self.r1() as usize;
        let mut m = RatMat::zeros(self.n(), r1);
        for i in 0..r1 {
            m[(self.idx((i as u16 + 1, 1)), i)] = rat(1);
        }
        m
    }

    /// `J_1 = Σ E_{i,(i p_1)}`.
    pub fn j1(&self) -> RatMat {
        let r1 = self.r1() as usize;
        let mut m = RatMat::zeros(r1, self.n());
        for i in 0..r1 {
            m[(i, self.idx((i as u16 + 1, self.p1())))] = rat(1);
        }
        m
    }

    /// Whether the matrix lies in the top degree `g_d`.
    pub fn in_top_degree(&self, s: &RatMat) -> bool {
        let d2 = 2 * self.depth() as i64;
        self.pairs().all(|(a, b)| {
            num_traits::Zero::is_zero(&s[(self.idx(a), self.idx(b))]) || self.grade2(a, b) == d2
        })
    }
}

/// Matrix commutator.
pub fn lie_bracket(a: &RatMat, b: &RatMat) -> RatMat {
    a.mul(b).add(&b.mul(a).scale(&rat(-1)))
}

/// Trace form `tr(ab)`.
pub fn trace_form(a: &RatMat, b: &RatMat) -> crate::ring::Rat {
    let p = a.mul(b);
    (0..p.rows).fold(rat(0), |acc, i| acc + &p[(i, i)])
}
