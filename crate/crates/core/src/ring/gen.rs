use std::fmt;

/// A box `(i, h)` of a pyramid: row `i`, position `h` inside the row, both 1-based.
pub type Cell = (u16, u16);

/// Name of a differential generator.
///
/// `Q(a, b)` is the variable `q_{ab}`, i.e. the elementary matrix `E_{ab}` of `gl_N`
/// viewed as an element of the differential algebra. `W(i, j, k)` is `w_{ij;k}`.
/// The derived ordering (kind first, then indices) fixes the canonical form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GenId {
    Q(Cell, Cell),
    W(u16, u16, u16),
    Abstract(u32),
}

/// The `n`-th derivative of a generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    pub gen: GenId,
    pub ord: u32,
}

impl Var {
    pub fn new(gen: GenId, ord: u32) -> Self {
        Var { gen, ord }
    }

    pub fn raised(self, by: u32) -> Self {
        Var { gen: self.gen, ord: self.ord + by }
    }
}

impl fmt::Display for GenId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenId::Q(a, b) => write!(f, "q({}{},{}{})", a.0, a.1, b.0, b.1),
            GenId::W(i, j, k) => write!(f, "w({},{};{})", i, j, k),
            GenId::Abstract(n) => write!(f, "u{}", n),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.ord {
            0 => write!(f, "{}", self.gen),
            n @ 1..=3 => write!(f, "{}{}", self.gen, "'".repeat(n as usize)),
            n => write!(f, "{}^({})", self.gen, n),
        }
    }
}

impl GenId {
    pub fn latex(&self) -> String {
        match self {
            GenId::Q(a, b) => format!("q_{{({}{}),({}{})}}", a.0, a.1, b.0, b.1),
            GenId::W(i, j, k) => format!("w_{{{}{};{}}}", i, j, k),
            GenId::Abstract(n) => format!("u_{{{}}}", n),
        }
    }
}

impl Var {
    pub fn latex(&self) -> String {
        match self.ord {
            0 => self.gen.latex(),
            1 => format!("{}'", self.gen.latex()),
            2 => format!("{}''", self.gen.latex()),
            n => format!("{}^{{({})}}", self.gen.latex(), n),
        }
    }
}
