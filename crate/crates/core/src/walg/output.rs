use serde_json::{json, Map, Value};

use crate::pdo::MatPdo;
use crate::pva::BracketPencil;
use crate::ring::GenId;

use super::solver::WPresentation;

fn key(g: &GenId) -> String {
    match g {
        GenId::W(i, j, k) => format!("{},{},{}", i, j, k),
        other => other.to_string(),
    }
}

/// `{"partition": [...], "generators": {"i,j,k": poly}, "L1": op}`.
pub fn presentation_json(pres: &WPresentation, l1: &MatPdo) -> Value {
    let mut gens = Map::new();
    for (&(i, j, k), p) in &pres.gens {
        gens.insert(format!("{},{},{}", i, j, k), p.to_json());
    }
    json!({
        "partition": pres.pyr.parts(),
        "generators": Value::Object(gens),
        "L1": l1.to_json(),
    })
}

/// Both bracket tables on the generators, keyed `"a|b"`.
pub fn pencil_json(pencil: &BracketPencil) -> Value {
    let table = |t: &crate::pva::BracketTable| {
        let mut m = Map::new();
        for &a in t.gens() {
            for &b in t.gens() {
                if let Ok(v) = t.get(a, b) {
                    m.insert(format!("{}|{}", key(&a), key(&b)), v.to_json());
                }
            }
        }
        Value::Object(m)
    };
    json!({ "bracket0": table(&pencil.bracket0), "bracket1": table(&pencil.bracket1) })
}

/// One `align*` row per generator.
pub fn generators_latex(pres: &WPresentation) -> String {
    let mut s = String::from("\\begin{align*}\n");
    for (&(i, j, k), p) in &pres.gens {
        s.push_str(&format!("{} &= {} \\\\\n", GenId::W(i, j, k).latex(), p.latex()));
    }
    s.push_str("\\end{align*}\n");
    s
}

/// One `align*` row per nonzero bracket of generators.
pub fn pencil_latex(pencil: &BracketPencil) -> String {
    let mut s = String::new();
    for (idx, t) in [&pencil.bracket0, &pencil.bracket1].into_iter().enumerate() {
        s.push_str("\\begin{align*}\n");
        for &a in t.gens() {
            for &b in t.gens() {
                let Ok(v) = t.get(a, b) else { continue };
                if v.is_zero() {
                    continue;
                }
                s.push_str(&format!("\\{{{}\\,{{}}_\\lambda\\,{}\\}}_{} &= {} \\\\\n", a.latex(), b.latex(), idx, v.latex()));
            }
        }
        s.push_str("\\end{align*}\n");
    }
    s
}

/// Plain text, one line per generator.
pub fn generators_text(pres: &WPresentation) -> String {
    pres.gens.iter().map(|(&(i, j, k), p)| format!("{} = {}\n", GenId::W(i, j, k), p)).collect()
}

/// Plain text, one line per nonzero bracket of generators.
pub fn pencil_text(pencil: &BracketPencil) -> String {
    let mut s = String::new();
    for (idx, t) in [&pencil.bracket0, &pencil.bracket1].into_iter().enumerate() {
        for &a in t.gens() {
            for &b in t.gens() {
                if let Ok(v) = t.get(a, b) {
                    if !v.is_zero() {
                        s.push_str(&format!("{{{} _λ {}}}_{} = {}\n", a, b, idx, v));
                    }
                }
            }
        }
    }
    s
}
