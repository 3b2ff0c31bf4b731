mod common;

use common::*;
use wlax::pdo::RatMat;
use wlax::ring::GenId;
use wlax::walg::*;

fn rectangular_case(parts: &[u16], sbar: &RatMat) {
    let pyr = Pyramid::new(parts).unwrap();
    let pres = solve_generators(&pyr).unwrap();
    let sf = SFactorization::new(&pyr, sbar).unwrap();
    let pencil = w_pencil(&pres, &sf).unwrap();
    let p1 = pyr.p1();
    for (&(b, a, h), _) in &pres.gens {
        for (&(d, c, k), _) in &pres.gens {
            let (x, y) = (GenId::W(b, a, h), GenId::W(d, c, k));
            let got0 = pencil.bracket0.get(x, y).unwrap();
            let want0 = rectangular_bracket0(p1, (b, a, h), (d, c, k));
            assert_eq!(got0, want0, "{:?} bracket0 {} {}", parts, x, y);
            let got1 = pencil.bracket1.get(x, y).unwrap();
            let want1 = rectangular_bracket1(p1, sbar, (b, a, h), (d, c, k));
            assert_eq!(got1, want1, "{:?} bracket1 {} {}", parts, x, y);
        }
    }
}

#[test]
fn principal_brackets() {
    for n in 2..=3 {
        rectangular_case(&[n], &RatMat::identity(1));
    }
}

#[test]
fn rectangular_brackets() {
    rectangular_case(&[2, 2], &RatMat::identity(2));
    rectangular_case(&[2, 2], &RatMat::from_ints(&[&[1, 0], &[0, 0]]));
    rectangular_case(&[2, 2], &RatMat::from_ints(&[&[2, -1], &[3, 5]]));
}

#[test]
fn express_rejects_non_members() {
    let pyr = Pyramid::new(&[2]).unwrap();
    let pres = solve_generators(&pyr).unwrap();
    assert!(express_in_w(&pres, &q((1, 1), (1, 1))).is_err());
}

fn constrained_pencil(p1: u16) -> wlax::pva::BracketPencil {
    let pyr = Pyramid::new(&[p1, 1]).unwrap();
    let pres = solve_generators(&pyr).unwrap();
    w_pencil(&pres, &SFactorization::identity(&pyr)).unwrap()
}

#[test]
fn minimal_brackets() {
    let pencil = constrained_pencil(2);
    let cf = Constrained { p1: 2 };
    for a in CGen::all(2) {
        for b in CGen::all(2) {
            let got0 = pencil.bracket0.get(a.id(), b.id()).unwrap();
            assert_eq!(got0, minimal_bracket0(a, b), "table bracket0 {:?} {:?}", a, b);
            assert_eq!(got0, cf.bracket0(a, b), "general bracket0 {:?} {:?}", a, b);
            let got1 = pencil.bracket1.get(a.id(), b.id()).unwrap();
            assert_eq!(got1, minimal_bracket1(a, b), "table bracket1 {:?} {:?}", a, b);
            assert_eq!(got1, cf.bracket1(a, b), "general bracket1 {:?} {:?}", a, b);
        }
    }
}

#[test]
fn constrained_brackets() {
    let pencil = constrained_pencil(3);
    let cf = Constrained { p1: 3 };
    for a in CGen::all(3) {
        for b in CGen::all(3) {
            let got0 = pencil.bracket0.get(a.id(), b.id()).unwrap();
            assert_eq!(got0, cf.bracket0(a, b), "bracket0 {:?} {:?}", a, b);
            let got1 = pencil.bracket1.get(a.id(), b.id()).unwrap();
            assert_eq!(got1, cf.bracket1(a, b), "bracket1 {:?} {:?}", a, b);
        }
    }
}

struct Sum<'a>(&'a wlax::pva::BracketTable, &'a wlax::pva::BracketTable);

impl wlax::pva::LambdaBracket for Sum<'_> {
    fn bracket(
        &self,
        f: &wlax::ring::DiffPoly,
        g: &wlax::ring::DiffPoly,
    ) -> Result<wlax::pva::LambdaPoly, wlax::pva::PvaError> {
        Ok(self.0.bracket(f, g)?.add(&self.1.bracket(f, g)?))
    }
}

#[test]
fn w_pencil_is_compatible_pair_of_pva_structures() {
    use wlax::pva::{check_jacobi, check_skew};
    for parts in [vec![2u16], vec![3], vec![2, 1]] {
        let pyr = Pyramid::new(&parts).unwrap();
        let pres = solve_generators(&pyr).unwrap();
        let pencil = w_pencil(&pres, &SFactorization::identity(&pyr)).unwrap();
        let gens = pres.w_gens();
        for (name, rep) in [
            ("skew 0", check_skew(&pencil.bracket0, &gens).unwrap()),
            ("skew 1", check_skew(&pencil.bracket1, &gens).unwrap()),
            ("jacobi 0", check_jacobi(&pencil.bracket0, &gens).unwrap()),
            ("jacobi 1", check_jacobi(&pencil.bracket1, &gens).unwrap()),
            ("jacobi sum", check_jacobi(&Sum(&pencil.bracket0, &pencil.bracket1), &gens).unwrap()),
        ] {
            assert!(rep.passed(), "{:?} {}\n{}", parts, name, rep);
        }
    }
}
