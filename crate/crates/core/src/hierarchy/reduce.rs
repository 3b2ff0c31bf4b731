use crate::pdo::{quasideterminant, shift_quasideterminant_check, MatPdo, RatMat};
use crate::walg::SFactorization;

use super::HierarchyError;

/// `L = |L_1|_{Ī J̄}`.
pub fn reduce_l(l1: &MatPdo, sf: &SFactorization, floor: i64) -> Result<MatPdo, HierarchyError> {
    if sf.rank == 0 {
        return Err(HierarchyError::ZeroS);
    }
    if sf.ibar == RatMat::identity(l1.rows) && sf.jbar == RatMat::identity(l1.rows) {
        return Ok(l1.clone());
    }
    Ok(quasideterminant(l1, &sf.ibar, &sf.jbar, floor)?)
}

/// `|L_1 + S̄|_{Ī J̄} = |L_1|_{Ī J̄} + 1`.
pub fn check_shift(l1: &MatPdo, sf: &SFactorization, floor: i64) -> Result<bool, HierarchyError> {
    Ok(shift_quasideterminant_check(l1, &sf.ibar, &sf.jbar, &RatMat::identity(sf.rank), floor)?)
}
