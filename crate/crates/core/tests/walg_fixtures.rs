mod common;

use common::*;
use wlax::pdo::MatPdo;
use wlax::walg::*;

#[test]
fn principal_generators_match_chain_expansion() {
    for n in 2..=3u16 {
        let pyr = Pyramid::new(&[n]).unwrap();
        let pres = solve_generators(&pyr).unwrap();
        for (k, want) in principal_generators(n) {
            assert_eq!(pres.get(1, 1, k), &want, "N={} k={}", n, k);
        }
        let mut trace = wlax::ring::DiffPoly::zero();
        for a in 1..=n {
            trace += &q((1, a), (1, a));
        }
        assert_eq!(pres.get(1, 1, n - 1), &trace);
    }
}

#[test]
fn short_generators_match() {
    let pyr = Pyramid::new(&[2, 2]).unwrap();
    let pres = solve_generators(&pyr).unwrap();
    for ((j, i, k), want) in short_generators(2) {
        assert_eq!(pres.get(j, i, k), &want, "w({},{};{})", j, i, k);
    }
}

#[test]
fn minimal_generators_match() {
    for parts in [vec![2u16, 1], vec![2, 1, 1]] {
        let pyr = Pyramid::new(&parts).unwrap();
        let pres = solve_generators(&pyr).unwrap();
        let want = minimal_generators(parts.len() as u16);
        assert_eq!(want.len(), pres.gens.len());
        for ((i, j, k), f) in want {
            assert_eq!(pres.get(i, j, k), &f, "{:?}: w({},{};{})", parts, i, j, k);
        }
    }
}

#[test]
fn l1_from_generators_matches_quasideterminant() {
    for parts in [vec![2u16], vec![3], vec![2, 1], vec![2, 2], vec![3, 1]] {
        let pyr = Pyramid::new(&parts).unwrap();
        let floor = -(2 * pyr.p1() as i64 + 2);
        let pres = solve_generators(&pyr).unwrap();
        let from_q = build_l1_from_q(&pyr, floor).unwrap();
        let from_w = l1_from_w_in_q(&pres, floor).unwrap();
        assert_eq!(from_q.floor(), Some(floor), "{:?}", parts);
        assert!(from_q.agrees(&from_w), "{:?}: {:?}", parts, from_q.mismatch(&from_w));
        // leading term -(-∂)^{p_1}
        let r1 = pyr.r1() as usize;
        let lead = MatPdo::identity(r1).scale(&wlax::ring::sign_pow(pyr.p1() as i64 + 1));
        assert_eq!(from_q.const_coeff(pyr.p1() as i64), lead.const_coeff(0));
    }
}

#[test]
fn pruning_does_not_change_generators() {
    for parts in [vec![3u16], vec![2, 1], vec![2, 2]] {
        let pyr = Pyramid::new(&parts).unwrap();
        let a = solve_generators_with(&pyr, SolverOptions::default()).unwrap();
        let b = solve_generators_with(&pyr, SolverOptions::pruned()).unwrap();
        assert_eq!(a, b, "{:?}", parts);
    }
}
