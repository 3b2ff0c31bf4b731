mod common;

use common::*;
use wlax::hierarchy::*;
use wlax::pdo::{MatPdo, Pdo, RatMat};
use wlax::pva::{is_total_derivative, variational_derivative};
use wlax::ring::{ratio, rat, DiffPoly, GenId};
use wlax::walg::*;

fn kdv() -> Hierarchy {
    let pyr = Pyramid::new(&[2]).unwrap();
    Hierarchy::new(&pyr, &RatMat::identity(1), &HierarchyConfig { k: None, n_max: 5, floor: None }).unwrap()
}

/// `σL = ∂² + w_1∂ - w_0 = e^{-φ}(∂² + u)e^{φ}` with `2φ' = w_1`.
fn kdv_u() -> DiffPoly {
    let (w0, w1) = (w(1, 1, 0), w(1, 1, 1));
    -(&(&w0 + &w1.d().scale(&ratio(1, 2))) + &w1.pow(2).scale(&ratio(1, 4)))
}

fn same_functional(a: &DiffPoly, b: &DiffPoly) -> bool {
    is_total_derivative(&(a - b))
}

#[test]
fn kdv_operator_and_sign() {
    let h = kdv();
    assert_eq!(h.sigma, -1);
    assert_eq!(h.k(), 2);
    let (w0, w1) = (w(1, 1, 0), w(1, 1, 1));
    let want = Pdo::d_pow(2).neg().add(&Pdo::d_pow(1).lmul(&w1).neg()).add(&Pdo::constant(w0));
    assert!(h.l.agrees(&MatPdo::scalar(want)));
}

#[test]
fn kdv_densities_match_gauge_oracle() {
    let h = kdv();
    let u = kdv_u();
    assert!(h.ledger.get(0).is_zero());
    assert!(same_functional(&h.ledger.get(1), &(-&u)));
    assert!(same_functional(&h.ledger.get(3), &u.pow(2).scale(&ratio(-1, 4))));
    // even densities come from differential operators
    assert!(h.ledger.get(2).is_zero() && h.ledger.get(4).is_zero());
    for n in [1, 3, 5] {
        assert!(is_nontrivial(&h.ledger.get(n)), "h{}", n);
        assert!(is_total_derivative(&h.ledger.exact_part(n)));
    }
}

#[test]
fn kdv_flows_match_gauge_oracle() {
    let h = kdv();
    let u = kdv_u();
    let w0 = GenId::W(1, 1, 0);
    let w1 = GenId::W(1, 1, 1);
    let f1 = h.flows(1).unwrap();
    assert!(f1[&w1].is_zero());
    assert_eq!(f1[&w0], -&u.d());
    let f3 = h.flows(3).unwrap();
    assert!(f3[&w1].is_zero());
    let kdv_rhs = &u.d_n(3).scale(&ratio(1, 4)) + &(&u * &u.d()).scale(&ratio(3, 2));
    assert_eq!(f3[&w0], -&kdv_rhs);
}

#[test]
fn kdv_hamiltonian_and_lax_agree() {
    let h = kdv();
    for n in 0..=4 {
        let rep = h.check_flow(n).unwrap();
        assert!(rep.passed(), "{}", rep);
    }
}

#[test]
fn kdv_lenard_magri() {
    let h = kdv();
    for n in 0..=3 {
        let rep = h.check_lenard_magri(n).unwrap();
        assert!(rep.passed(), "{}", rep);
    }
}

#[test]
fn kdv_involution() {
    let rep = kdv().involution().unwrap();
    assert!(rep.passed(), "{}", rep);
}

#[test]
fn swapped_brackets_break_lenard_magri() {
    let h = kdv();
    let rep = check_lenard_magri(&h.l, &h.ledger, &h.pencil.bracket1, &h.pencil.bracket0, h.sigma, &h.gens(), 1).unwrap();
    assert!(!rep.passed());
}

#[test]
fn lax_rhs_is_lower_order_and_sign_independent() {
    let h = kdv();
    for n in 1..=4 {
        let r = lax_rhs(&h.l, &h.ledger.root, n);
        assert!(r.order().is_none_or(|o| o < 2));
        let flipped = lax_rhs(&h.l.scale(&rat(-1)), &h.ledger.root, n).scale(&rat(-1));
        assert!(r.agrees(&flipped));
    }
    assert!(lax_rhs(&h.l, &h.ledger.root, 2).is_zero());
}

#[test]
fn constant_operator_has_no_densities() {
    let l = MatPdo::scalar(Pdo::d_pow(2));
    let led = densities(&l, 2, 4, -6).unwrap();
    assert!(led.densities.values().all(DiffPoly::is_zero));
}

#[test]
fn normalization_is_canonical() {
    let a = w(1, 1, 0);
    let b = w(1, 1, 1);
    let h = &(&a * &b.d()) + &a.pow(2).d();
    let g = -&(&a.d() * &b);
    assert_eq!(normalize_density(&h), normalize_density(&g));
    assert!(normalize_density(&(&a * &a.d_n(2))).len() == 1);
    assert!(normalize_density(&(&a.pow(3).d() + &b.d_n(4))).is_zero());
    let x = &(&a.pow(2) * &b.d_n(2)) + &a.d().pow(2);
    let nx = normalize_density(&x);
    assert!(is_total_derivative(&(&x - &nx)));
    assert_eq!(normalize_density(&nx), nx);
    for g in [GenId::W(1, 1, 0), GenId::W(1, 1, 1)] {
        assert_eq!(variational_derivative(&x, g), variational_derivative(&nx, g));
    }
}

#[test]
fn rectangular_hierarchy() {
    let pyr = Pyramid::new(&[2, 2]).unwrap();
    for sbar in [RatMat::identity(2), RatMat::from_ints(&[&[1, 0], &[0, 0]])] {
        let h = Hierarchy::new(&pyr, &sbar, &HierarchyConfig { k: None, n_max: 3, floor: None }).unwrap();
        assert!(h.check_shift().unwrap().passed());
        for n in 0..=3 - h.k() {
            let rep = h.check_lenard_magri(n).unwrap();
            assert!(rep.passed(), "{}\n{}", sbar, rep);
        }
        for n in 1..=2 {
            assert!(h.check_flow(n).unwrap().passed());
        }
        let rep = h.involution().unwrap();
        assert!(rep.passed(), "{}", rep);
    }
}

#[test]
fn reduce_with_identity_is_trivial() {
    let pyr = Pyramid::new(&[2, 1]).unwrap();
    let sf = SFactorization::identity(&pyr);
    let l1 = build_l1_from_w(&pyr, -6).unwrap();
    assert_eq!(reduce_l(&l1, &sf, -6).unwrap(), l1);
}

#[test]
fn rank_one_reduction_reinverts() {
    // |L_1|_{e1 e1^T} = ((L_1^{-1})_{11})^{-1}
    let pyr = Pyramid::new(&[2, 2]).unwrap();
    let sf = SFactorization::new(&pyr, &RatMat::from_ints(&[&[1, 0], &[0, 0]])).unwrap();
    let floor = -4;
    let l1 = build_l1_from_w(&pyr, floor).unwrap();
    let l = reduce_l(&l1, &sf, floor).unwrap();
    assert_eq!((l.rows, l.cols), (1, 1));
    let inv = wlax::pdo::invert(&l1, floor - 4).unwrap();
    let corner = MatPdo::scalar(inv.get(0, 0).clone());
    let back = wlax::pdo::invert(&corner, floor).unwrap();
    assert!(back.agrees(&l), "{:?}", back.mismatch(&l));
    assert!(l.floor().is_some(), "rank-one reduction is a genuine series");
}

#[test]
fn constrained_minimal_matches_display() {
    for parts in [vec![2u16, 1], vec![3, 1], vec![2, 1, 1]] {
        let pyr = Pyramid::new(&parts).unwrap();
        let p1 = pyr.p1() as i64;
        let floor = -p1 - 3;
        let lbar = constrained_reduction(&pyr, floor).unwrap();
        let mut want = Pdo::neg_d_pow(p1).neg();
        for k in 0..p1 {
            want = want.add(&Pdo::neg_d_pow(k).lmul(&w(1, 1, k as u16)));
        }
        for a in 2..=parts.len() as u16 {
            let left = Pdo::constant(w(a, 1, 0)).mul(&Pdo::d_pow(-1));
            let tail = left.mul_to(&Pdo::constant(w(1, a, 0)), Some(floor));
            want = want.sub(&tail);
        }
        let want = MatPdo::scalar(want);
        assert!(lbar.agrees(&want), "{:?}: {:?}", parts, lbar.mismatch(&want));
    }
}

#[test]
fn constrained_rejects_other_shapes() {
    let pyr = Pyramid::new(&[3, 2]).unwrap();
    assert!(matches!(constrained_reduction(&pyr, -6), Err(HierarchyError::WrongPartitionShape(_))));
}

#[test]
fn constrained_flows_close() {
    for parts in [vec![2u16, 1], vec![3, 1], vec![2, 1, 1], vec![2, 2, 1]] {
        let pyr = Pyramid::new(&parts).unwrap();
        let p1 = pyr.p1() as i64;
        let floor = -p1 - 4;
        let lbar = constrained_reduction(&pyr, floor).unwrap();
        let sigma = monic_sign(&lbar).unwrap();
        let b = root(&lbar.scale(&rat(sigma)), p1 as u32, floor).unwrap();
        for n in 1..=3 {
            let rep = check_constrained_flow(&pyr, &lbar, &b, n).unwrap();
            assert!(rep.passed(), "{:?}\n{}", parts, rep);
        }
    }
}

#[test]
fn constrained_nls_flow() {
    // p = (2,1), second flow: q_t = q'' + ..., r_t = -r'' + ...
    let pyr = Pyramid::new(&[2, 1]).unwrap();
    let lbar = constrained_reduction(&pyr, -7).unwrap();
    let b = root(&lbar.scale(&rat(-1)), 2, -7).unwrap();
    let f = constrained_flows(&pyr, &lbar, &b, 2).unwrap();
    let (q, r) = (GenId::W(2, 1, 0), GenId::W(1, 2, 0));
    assert_eq!(f[&q].coeff(&wlax::ring::Mono::from_factors(vec![(wlax::ring::Var::new(q, 2), 1)])), rat(1));
    assert_eq!(f[&r].coeff(&wlax::ring::Mono::from_factors(vec![(wlax::ring::Var::new(r, 2), 1)])), rat(-1));
}

#[test]
fn casimirs_before_constrained_reduction() {
    for parts in [vec![2u16, 1], vec![3, 1], vec![2, 1, 1]] {
        let pyr = Pyramid::new(&parts).unwrap();
        let pres = solve_generators(&pyr).unwrap();
        let pencil = w_pencil(&pres, &SFactorization::identity(&pyr)).unwrap();
        let rep = check_casimirs(&pres, &pencil.bracket1).unwrap();
        assert!(rep.passed(), "{:?}\n{}", parts, rep);
        let r1 = pyr.r1();
        for a in r1 + 1..=pyr.r() {
            for b in r1 + 1..=pyr.r() {
                for g in pres.w_gens() {
                    let v = pencil.bracket1.get(GenId::W(a, b, 0), g).unwrap();
                    assert!(v.is_zero());
                }
            }
        }
    }
}
