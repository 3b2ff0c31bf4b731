//! Reduced operator, Hamiltonian densities, Lax flows and the Lenard–Magri ladder.

mod constrained;
mod density;
mod flows;
mod output;
mod reduce;

pub use constrained::{check_constrained_flow, constrained_flows, constrained_gens, constrained_reduction};
pub use density::{densities, normalize_density, required_floor, root, DensityLedger};
pub use flows::{
    check_flow, check_lenard_magri, evolve, evolve_operator, flow_field, involution_suite, is_nontrivial, lax_rhs,
};
pub use output::{flows_latex, flows_text, hierarchy_json};
pub use reduce::{check_shift, reduce_l};

use std::collections::BTreeMap;

use thiserror::Error;

use crate::pdo::{MatPdo, PdoError, RatMat};
use crate::pva::{BracketPencil, PvaError};
use crate::report::Report;
use crate::ring::{DiffPoly, GenId};
use crate::walg::{build_l1_from_w, solve_generators, w_pencil, Pyramid, SFactorization, WPresentation, WalgError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HierarchyError {
    #[error("partition {0:?} is not of the form (p1, ..., p1, 1, ..., 1)")]
    WrongPartitionShape(Vec<u16>),
    #[error("root order {0} is not allowed")]
    BadRootOrder(u32),
    #[error("S-bar is zero")]
    ZeroS,
    #[error("leading coefficient of L is not ±1, so only K = 1 is available")]
    NotMonic,
    #[error(transparent)]
    Walg(#[from] WalgError),
    #[error(transparent)]
    Pva(#[from] PvaError),
    #[error(transparent)]
    Pdo(#[from] PdoError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HierarchyConfig {
    /// Root order; `None` picks `p_1` when `L` is monic up to sign and `1` otherwise.
    pub k: Option<u32>,
    /// Highest density index.
    pub n_max: u32,
    /// Truncation floor for `L`; lowered as needed to determine the densities.
    pub floor: Option<i64>,
}

/// `σ` with `σ·(leading coefficient) = 1`, when it exists.
pub fn monic_sign(l: &MatPdo) -> Option<i64> {
    let lead = l.const_coeff(l.order()?)?;
    let id = RatMat::identity(l.rows);
    if lead == id {
        Some(1)
    } else if lead == id.scale(&crate::ring::rat(-1)) {
        Some(-1)
    } else {
        None
    }
}

/// Everything attached to the reduced operator `L = |L_1|_{Ī J̄}` over the W-algebra.
pub struct Hierarchy {
    pub pres: WPresentation,
    pub sf: SFactorization,
    pub pencil: BracketPencil,
    pub l1: MatPdo,
    pub l: MatPdo,
    pub sigma: i64,
    pub floor: i64,
    pub ledger: DensityLedger,
}

impl Hierarchy {
    pub fn new(pyr: &Pyramid, sbar: &RatMat, cfg: &HierarchyConfig) -> Result<Self, HierarchyError> {
        let pres = solve_generators(pyr)?;
        let sf = SFactorization::new(pyr, sbar)?;
        let pencil = w_pencil(&pres, &sf)?;
        Self::with_parts(pres, sf, pencil, cfg)
    }

    /// Builds from already computed generators and brackets.
    pub fn with_parts(
        pres: WPresentation,
        sf: SFactorization,
        pencil: BracketPencil,
        cfg: &HierarchyConfig,
    ) -> Result<Self, HierarchyError> {
        let pyr = &pres.pyr;
        let order = pyr.p1() as i64;
        // The leading coefficient of L is known before any truncation choice.
        let probe = reduce_l(&build_l1_from_w(pyr, order - 1)?, &sf, order - 1)?;
        let sign = monic_sign(&probe);
        let k = match (cfg.k, sign) {
            (Some(0), _) => return Err(HierarchyError::BadRootOrder(0)),
            (Some(k), _) if order % k as i64 != 0 => return Err(HierarchyError::BadRootOrder(k)),
            (Some(k), None) if k > 1 => return Err(HierarchyError::NotMonic),
            (Some(k), _) => k,
            (None, Some(_)) => pyr.p1() as u32,
            (None, None) => 1,
        };
        let sigma = sign.unwrap_or(1);
        let need = required_floor(order, k, cfg.n_max).min(-1);
        let floor = cfg.floor.map_or(need, |f| f.min(need));
        let l1 = build_l1_from_w(pyr, floor)?;
        let l = reduce_l(&l1, &sf, floor)?;
        let ledger = densities(&l.scale(&crate::ring::rat(sigma)), k, cfg.n_max, floor)?;
        Ok(Hierarchy { pres, sf, pencil, l1, l, sigma, floor, ledger })
    }

    pub fn gens(&self) -> Vec<GenId> {
        self.pres.w_gens()
    }

    pub fn k(&self) -> u32 {
        self.ledger.k
    }

    /// `{∫h_n, w}_0` for every generator.
    pub fn flows(&self, n: u32) -> Result<BTreeMap<GenId, DiffPoly>, HierarchyError> {
        flow_field(&self.pencil.bracket0, &self.ledger.get(n), &self.gens())
    }

    pub fn check_flow(&self, n: u32) -> Result<Report, HierarchyError> {
        check_flow(&self.l, &self.ledger, &self.pencil.bracket0, &self.gens(), n)
    }

    pub fn check_lenard_magri(&self, n: u32) -> Result<Report, HierarchyError> {
        check_lenard_magri(&self.l, &self.ledger, &self.pencil.bracket0, &self.pencil.bracket1, self.sigma, &self.gens(), n)
    }

    pub fn involution(&self) -> Result<Report, HierarchyError> {
        involution_suite(&self.ledger, &self.pencil.bracket0, &self.pencil.bracket1)
    }

    pub fn check_shift(&self) -> Result<Report, HierarchyError> {
        let mut rep = Report::new("shift");
        let ok = check_shift(&self.l1, &self.sf, self.floor)?;
        rep.record("|L1 + S̄| = L + 1", ok, || "coefficients differ".into());
        Ok(rep)
    }
}
