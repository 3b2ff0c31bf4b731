//! Scalar and matrix pseudodifferential operators with tracked truncation floors.
//!
//! Every operator records the lowest degree down to which its coefficients are known.
//! Products, inverses and roots compute the floor of the result from the operands, and
//! comparisons only look at degrees known on both sides.

mod invert;
mod linalg;
mod matrix;
mod scalar;
mod symbol;

pub use invert::{invert, invert_scalar, kth_root, quasideterminant, shift_quasideterminant_check, QuasidetStage};
pub use linalg::RatMat;
pub use matrix::MatPdo;
pub use scalar::Pdo;
pub use symbol::{adjoint_symbol, symbol_w, symbol_z, Sym3, Window};

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::ring::{DiffPoly, RingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PdoError {
    #[error("coefficient of degree {needed} is below the known floor {floor}")]
    FloorTooHigh { floor: i64, needed: i64 },
    #[error("operator is not invertible: {0}")]
    NotInvertible(String),
    #[error("quasideterminant does not exist ({0:?} inversion): {1}")]
    QuasidetNotInvertible(QuasidetStage, String),
    #[error("leading coefficient is not the identity")]
    NotMonic,
    #[error("order {order} is not divisible by {k}")]
    OrderNotDivisible { order: i64, k: u32 },
    #[error("matrix is not square")]
    NotSquare,
    #[error("incompatible shapes")]
    ShapeMismatch,
    #[error(transparent)]
    Ring(#[from] RingError),
}

impl Pdo {
    pub fn to_json(&self) -> Value {
        let mut coeffs = Map::new();
        for (k, c) in self.coeffs() {
            coeffs.insert(k.to_string(), c.to_json());
        }
        json!({"floor": self.floor(), "coeffs": coeffs})
    }

    pub fn from_json(v: &Value) -> Result<Pdo, PdoError> {
        let bad = |m: &str| PdoError::Ring(RingError::Json(m.into()));
        let floor = match v.get("floor") {
            None | Some(Value::Null) => None,
            Some(f) => Some(f.as_i64().ok_or_else(|| bad("bad floor"))?),
        };
        let coeffs = v.get("coeffs").and_then(Value::as_object).ok_or_else(|| bad("missing coeffs"))?;
        let mut terms = Vec::new();
        for (k, c) in coeffs {
            terms.push((k.parse::<i64>().map_err(|_| bad("bad degree"))?, DiffPoly::from_json(c)?));
        }
        Ok(Pdo::from_coeffs(terms, floor))
    }
}

impl MatPdo {
    pub fn to_json(&self) -> Value {
        Value::Array(
            (0..self.rows)
                .map(|i| Value::Array((0..self.cols).map(|j| self.get(i, j).to_json()).collect()))
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<MatPdo, PdoError> {
        let rows = v.as_array().ok_or(PdoError::ShapeMismatch)?;
        let mut entries = Vec::new();
        let mut cols = None;
        for r in rows {
            let r = r.as_array().ok_or(PdoError::ShapeMismatch)?;
            if *cols.get_or_insert(r.len()) != r.len() {
                return Err(PdoError::ShapeMismatch);
            }
            for e in r {
                entries.push(Pdo::from_json(e)?);
            }
        }
        Ok(MatPdo::from_entries(rows.len(), cols.unwrap_or(0), entries))
    }
}
