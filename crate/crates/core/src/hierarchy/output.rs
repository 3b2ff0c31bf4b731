use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::ring::{DiffPoly, GenId};

use super::DensityLedger;

fn flow_key(g: &GenId) -> String {
    match g {
        GenId::W(i, j, k) => format!("w_{{{},{},{}}}", i, j, k),
        other => other.to_string(),
    }
}

/// `{"densities": {n: poly}, "flows": {n: {"w_{i,j,k}": poly}}}`.
pub fn hierarchy_json(ledger: Option<&DensityLedger>, flows: &BTreeMap<u32, BTreeMap<GenId, DiffPoly>>) -> Value {
    let mut dens = Map::new();
    if let Some(l) = ledger {
        for (n, h) in &l.densities {
            dens.insert(n.to_string(), h.to_json());
        }
    }
    let mut fl = Map::new();
    for (n, f) in flows {
        let mut m = Map::new();
        for (g, p) in f {
            m.insert(flow_key(g), p.to_json());
        }
        fl.insert(n.to_string(), Value::Object(m));
    }
    json!({ "densities": Value::Object(dens), "flows": Value::Object(fl) })
}

/// Densities and evolution equations as `align*` blocks.
pub fn flows_latex(ledger: Option<&DensityLedger>, flows: &BTreeMap<u32, BTreeMap<GenId, DiffPoly>>) -> String {
    let mut s = String::new();
    if let Some(l) = ledger {
        s.push_str("\\begin{align*}\n");
        for (n, h) in l.densities.iter().filter(|(&n, _)| n > 0) {
            s.push_str(&format!("h_{{{}}} &= {} \\\\\n", n, h.latex()));
        }
        s.push_str("\\end{align*}\n");
    }
    for (n, f) in flows {
        s.push_str("\\begin{align*}\n");
        for (g, p) in f {
            s.push_str(&format!("\\frac{{d{}}}{{dt_{{{}}}}} &= {} \\\\\n", g.latex(), n, p.latex()));
        }
        s.push_str("\\end{align*}\n");
    }
    s
}

/// Plain text, one line per density and per evolution equation.
pub fn flows_text(ledger: Option<&DensityLedger>, flows: &BTreeMap<u32, BTreeMap<GenId, DiffPoly>>) -> String {
    let mut s = String::new();
    if let Some(l) = ledger {
        for (n, h) in l.densities.iter().filter(|(&n, _)| n > 0) {
            s.push_str(&format!("h{} = {}\n", n, h));
        }
    }
    for (n, f) in flows {
        for (g, p) in f {
            s.push_str(&format!("d{}/dt{} = {}\n", g, n, p));
        }
    }
    s
}
