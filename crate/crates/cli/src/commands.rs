use std::collections::BTreeMap;

use serde_json::{json, Value};
use wlax::hierarchy::{
    check_constrained_flow, constrained_flows, constrained_reduction, flows_latex, flows_text, hierarchy_json,
    monic_sign, root, Hierarchy, HierarchyConfig,
};
use wlax::pdo::RatMat;
use wlax::pva::{affine_operator, affine_pencil, check_adler, check_bi_adler, check_inverse_adler, check_jacobi, check_skew, BracketPencil};
use wlax::report::Report;
use wlax::ring::{rat, DiffPoly, GenId};
use wlax::walg::{
    build_l1_from_w, check_casimirs, check_generators, check_inverse_membership, check_l1_adler, check_l1_agreement,
    check_slice_duality, generators_latex, generators_text, pencil_json, pencil_latex, pencil_text, presentation_json,
    solve_generators, w_pencil, SFactorization, WPresentation,
};

use crate::config::{Format, RunConfig};

/// What a command produced: the rendered document and whether its checks passed.
pub struct Outcome {
    pub body: String,
    pub passed: bool,
}

impl Outcome {
    fn ok(body: String) -> Self {
        Outcome { body, passed: true }
    }
}

fn fail<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values always serialize");
    s.push('\n');
    s
}

fn pencil_for(cfg: &RunConfig, pres: &WPresentation, sf: &SFactorization) -> Result<BracketPencil, String> {
    let mut pencil = w_pencil(pres, sf).map_err(fail)?;
    if cfg.corrupt {
        if let Some((a, b)) = pencil.bracket0.first_nonzero() {
            pencil.bracket0 = pencil.bracket0.corrupted(a, b);
        }
    }
    Ok(pencil)
}

pub fn generators(cfg: &RunConfig) -> Result<Outcome, String> {
    let pres = solve_generators(&cfg.pyr).map_err(fail)?;
    let body = match cfg.format {
        Format::Json => {
            let l1 = build_l1_from_w(&cfg.pyr, cfg.floor).map_err(fail)?;
            render_json(&presentation_json(&pres, &l1))
        }
        Format::Latex => generators_latex(&pres),
        Format::Text => generators_text(&pres),
    };
    Ok(Outcome::ok(body))
}

pub fn brackets(cfg: &RunConfig) -> Result<Outcome, String> {
    let pres = solve_generators(&cfg.pyr).map_err(fail)?;
    let sf = SFactorization::new(&cfg.pyr, &cfg.sbar).map_err(fail)?;
    let pencil = pencil_for(cfg, &pres, &sf)?;
    let body = match cfg.format {
        Format::Json => render_json(&pencil_json(&pencil)),
        Format::Latex => pencil_latex(&pencil),
        Format::Text => pencil_text(&pencil),
    };
    Ok(Outcome::ok(body))
}

fn build_hierarchy(cfg: &RunConfig, n_max: u32) -> Result<Hierarchy, String> {
    let pres = solve_generators(&cfg.pyr).map_err(fail)?;
    let sf = SFactorization::new(&cfg.pyr, &cfg.sbar).map_err(fail)?;
    let pencil = pencil_for(cfg, &pres, &sf)?;
    let hc = HierarchyConfig { k: cfg.root, n_max, floor: Some(cfg.floor) };
    Hierarchy::with_parts(pres, sf, pencil, &hc).map_err(fail)
}

/// Hierarchy checks: Hamiltonian and Lax flows agree, Lenard–Magri, involution.
fn hierarchy_checks(h: &Hierarchy, flows: u32) -> Result<Report, String> {
    let mut rep = Report::new("hierarchy");
    rep.merge(h.check_shift().map_err(fail)?);
    for n in 1..=flows {
        rep.merge(h.check_flow(n).map_err(fail)?);
    }
    for n in 0..=flows {
        rep.merge(h.check_lenard_magri(n).map_err(fail)?);
    }
    rep.merge(h.involution().map_err(fail)?);
    Ok(rep)
}

fn constrained_floor(cfg: &RunConfig) -> i64 {
    cfg.floor.min(-(cfg.pyr.p1() as i64) - 1 - cfg.flows as i64)
}

fn constrained(cfg: &RunConfig) -> Result<(BTreeMap<u32, BTreeMap<GenId, DiffPoly>>, Report), String> {
    let floor = constrained_floor(cfg);
    let lbar = constrained_reduction(&cfg.pyr, floor).map_err(fail)?;
    let sigma = monic_sign(&lbar).ok_or("reduced operator is not monic")?;
    let b = root(&lbar.scale(&rat(sigma)), cfg.pyr.p1() as u32, floor).map_err(fail)?;
    let mut flows = BTreeMap::new();
    let mut rep = Report::new("constrained");
    for n in 0..=cfg.flows {
        flows.insert(n, constrained_flows(&cfg.pyr, &lbar, &b, n).map_err(fail)?);
        rep.merge(check_constrained_flow(&cfg.pyr, &lbar, &b, n).map_err(fail)?);
    }
    Ok((flows, rep))
}

pub fn hierarchy(cfg: &RunConfig) -> Result<Outcome, String> {
    let (ledger, flows, rep) = if cfg.constrained {
        let (flows, rep) = constrained(cfg)?;
        (None, flows, rep)
    } else {
        let h = build_hierarchy(cfg, cfg.flows + cfg.pyr.p1() as u32)?;
        let mut flows = BTreeMap::new();
        for n in 0..=cfg.flows {
            flows.insert(n, h.flows(n).map_err(fail)?);
        }
        let rep = hierarchy_checks(&h, cfg.flows)?;
        (Some(h.ledger), flows, rep)
    };
    if !rep.passed() {
        eprint!("{}", rep);
    }
    let body = match cfg.format {
        Format::Json => render_json(&hierarchy_json(ledger.as_ref(), &flows)),
        Format::Latex => flows_latex(ledger.as_ref(), &flows),
        Format::Text => flows_text(ledger.as_ref(), &flows),
    };
    Ok(Outcome { body, passed: rep.passed() })
}

/// Adler-type checks on `1∂ + Q` over `V(gl_N)`, for small `N`.
fn affine_suite(cfg: &RunConfig, sf: &SFactorization) -> Result<Option<Report>, String> {
    let n = cfg.pyr.n();
    if n > 3 {
        return Ok(None);
    }
    let mut rep = Report::new("affine");
    let pen = affine_pencil(&cfg.pyr, &sf.s).map_err(fail)?;
    let a = affine_operator(&cfg.pyr);
    let gens = cfg.pyr.all_vars();
    rep.merge(check_skew(&pen.bracket0, &gens).map_err(fail)?);
    rep.merge(check_jacobi(&pen.bracket0, &gens).map_err(fail)?);
    rep.merge(check_bi_adler(&a, &pen.bracket0, &pen.bracket1, &sf.s, -4).map_err(fail)?);
    if n <= 2 {
        rep.merge(check_inverse_adler(&a, &pen.bracket0, -4).map_err(fail)?);
    } else {
        rep.merge(check_adler(&a, &pen.bracket0, -3).map_err(fail)?);
    }
    Ok(Some(rep))
}

pub fn verify(cfg: &RunConfig) -> Result<Outcome, String> {
    let pyr = &cfg.pyr;
    let p1 = pyr.p1() as i64;
    let pres = solve_generators(pyr).map_err(fail)?;
    let sf = SFactorization::new(pyr, &cfg.sbar).map_err(fail)?;
    let pencil = pencil_for(cfg, &pres, &sf)?;
    let gens = pres.w_gens();

    let mut reports = vec![check_slice_duality(pyr), check_generators(&pres).map_err(fail)?];
    let mut w = Report::new("w brackets");
    for (name, table) in [("bracket0", &pencil.bracket0), ("bracket1", &pencil.bracket1)] {
        let mut r = Report::new(name);
        r.merge(check_skew(table, &gens).map_err(fail)?);
        r.merge(check_jacobi(table, &gens).map_err(fail)?);
        w.merge(r);
    }
    reports.push(w);
    if let Some(r) = affine_suite(cfg, &sf)? {
        reports.push(r);
    }
    reports.push(check_inverse_membership(pyr, -p1 - 4).map_err(fail)?);
    reports.push(check_l1_agreement(&pres, cfg.floor).map_err(fail)?);
    reports.push(check_l1_adler(pyr, &sf, -p1 - 3, -3).map_err(fail)?);
    let casimir_table = if cfg.sbar == RatMat::identity(pyr.r1() as usize) {
        pencil.bracket1.clone()
    } else {
        w_pencil(&pres, &SFactorization::identity(pyr)).map_err(fail)?.bracket1
    };
    reports.push(check_casimirs(&pres, &casimir_table).map_err(fail)?);

    let flows = cfg.flows.min(3);
    let h = Hierarchy::with_parts(
        pres,
        sf,
        pencil,
        &HierarchyConfig { k: cfg.root, n_max: flows + pyr.p1() as u32, floor: Some(cfg.floor) },
    )
    .map_err(fail)?;
    reports.push(hierarchy_checks(&h, flows)?);
    if cfg.constrained {
        reports.push(constrained(cfg)?.1);
    }

    let passed = reports.iter().all(Report::passed);
    let body = match cfg.format {
        Format::Json => render_json(&json!({ "passed": passed, "reports": reports })),
        Format::Latex | Format::Text => reports.iter().map(|r| r.to_string()).collect(),
    };
    Ok(Outcome { body, passed })
}
