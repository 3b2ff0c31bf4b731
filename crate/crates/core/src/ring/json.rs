use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use super::gen::{GenId, Var};
use super::poly::{DiffPoly, Mono};
use super::rat::Rat;
use super::RingError;

fn int_to_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

fn int_from_json(v: &Value) -> Result<BigInt, RingError> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| RingError::Json(format!("bad integer {}", n))),
        Value::String(s) => s.parse().map_err(|_| RingError::Json(format!("bad integer {}", s))),
        other => Err(RingError::Json(format!("expected integer, got {}", other))),
    }
}

pub fn rat_to_json(r: &Rat) -> Value {
    json!([int_to_json(r.numer()), int_to_json(r.denom())])
}

pub fn rat_from_json(v: &Value) -> Result<Rat, RingError> {
    let a = v.as_array().filter(|a| a.len() == 2).ok_or_else(|| RingError::Json("coefficient must be [num, den]".into()))?;
    let den = int_from_json(&a[1])?;
    if den == BigInt::from(0) {
        return Err(RingError::Json("zero denominator".into()));
    }
    Ok(Rat::new(int_from_json(&a[0])?, den))
}

pub fn gen_to_json(g: &GenId) -> Value {
    match *g {
        GenId::Q(a, b) => json!(["q", [a.0, a.1], [b.0, b.1]]),
        GenId::W(i, j, k) => json!(["w", [i, j, k]]),
        GenId::Abstract(n) => json!(["u", n]),
    }
}

fn small(v: &Value) -> Result<u16, RingError> {
    v.as_u64().and_then(|x| u16::try_from(x).ok()).ok_or_else(|| RingError::Json(format!("bad index {}", v)))
}

fn pair(v: &Value) -> Result<(u16, u16), RingError> {
    match v.as_array() {
        Some(a) if a.len() == 2 => Ok((small(&a[0])?, small(&a[1])?)),
        _ => Err(RingError::Json(format!("bad box {}", v))),
    }
}

pub fn gen_from_json(v: &Value) -> Result<GenId, RingError> {
    let a = v.as_array().ok_or_else(|| RingError::Json(format!("bad generator {}", v)))?;
    match (a.first().and_then(Value::as_str), a.len()) {
        (Some("q"), 3) => Ok(GenId::Q(pair(&a[1])?, pair(&a[2])?)),
        (Some("w"), 2) => match a[1].as_array() {
            Some(t) if t.len() == 3 => Ok(GenId::W(small(&t[0])?, small(&t[1])?, small(&t[2])?)),
            _ => Err(RingError::Json(format!("bad generator {}", v))),
        },
        (Some("u"), 2) => a[1]
            .as_u64()
            .and_then(|x| u32::try_from(x).ok())
            .map(GenId::Abstract)
            .ok_or_else(|| RingError::Json(format!("bad generator {}", v))),
        _ => Err(RingError::Json(format!("bad generator {}", v))),
    }
}

impl DiffPoly {
    pub fn to_json(&self) -> Value {
        let monos: Vec<Value> = self
            .terms()
            .map(|(m, c)| {
                let factors: Vec<Value> =
                    m.factors().iter().map(|&(v, e)| json!([gen_to_json(&v.gen), v.ord, e])).collect();
                json!({"coeff": rat_to_json(c), "factors": factors})
            })
            .collect();
        json!({ "monomials": monos })
    }

    pub fn from_json(v: &Value) -> Result<DiffPoly, RingError> {
        let monos = v
            .get("monomials")
            .and_then(Value::as_array)
            .ok_or_else(|| RingError::Json("missing \"monomials\"".into()))?;
        let mut p = DiffPoly::zero();
        for m in monos {
            let c = rat_from_json(m.get("coeff").ok_or_else(|| RingError::Json("missing coeff".into()))?)?;
            let fs = m.get("factors").and_then(Value::as_array).ok_or_else(|| RingError::Json("missing factors".into()))?;
            let mut factors = Vec::with_capacity(fs.len());
            for f in fs {
                let t = f.as_array().filter(|t| t.len() == 3).ok_or_else(|| RingError::Json(format!("bad factor {}", f)))?;
                let g = gen_from_json(&t[0])?;
                let n = t[1].as_u64().and_then(|x| u32::try_from(x).ok()).ok_or_else(|| RingError::Json("bad order".into()))?;
                let e = t[2].as_u64().and_then(|x| u32::try_from(x).ok()).ok_or_else(|| RingError::Json("bad exponent".into()))?;
                factors.push((Var::new(g, n), e));
            }
            p.add_term(Mono::from_factors(factors), c);
        }
        Ok(p)
    }
}
