use std::collections::BTreeSet;

use crate::report::Report;
use crate::ring::{binom, DiffPoly, GenId};

use super::bracket::LambdaBracket;
use super::lambda::{Lambda2, LambdaPoly};
use super::PvaError;

/// Euler operator `δh/δu = Σ_n (-∂)^n ∂h/∂u^{(n)}`.
pub fn variational_derivative(h: &DiffPoly, g: GenId) -> DiffPoly {
    let mut out = DiffPoly::zero();
    for v in h.vars().into_iter().filter(|v| v.gen == g) {
        let part = h.partial(v);
        let mut t = part.d_n(v.ord);
        if v.ord % 2 == 1 {
            t = -t;
        }
        out += &t;
    }
    out
}

/// True when `h` is a total derivative, i.e. every variational derivative vanishes.
pub fn is_total_derivative(h: &DiffPoly) -> bool {
    h.gens().into_iter().all(|g| variational_derivative(h, g).is_zero())
}

/// Hamiltonian flow `{∫h, u} = {h_λ u}|_{λ=0}`.
pub fn hamiltonian_flow<B: LambdaBracket + ?Sized>(br: &B, h: &DiffPoly, u: GenId) -> Result<DiffPoly, PvaError> {
    Ok(br.bracket(h, &DiffPoly::gen(u))?.at_zero())
}

/// `{∫h1, ∫h2} = 0`: the bracket at `λ = 0` is a total derivative.
pub fn check_involution<B: LambdaBracket + ?Sized>(br: &B, h1: &DiffPoly, h2: &DiffPoly) -> Result<bool, PvaError> {
    Ok(is_total_derivative(&br.bracket(h1, h2)?.at_zero()))
}

/// Skewsymmetry `{b_λ a} = -{a_{-λ-∂} b}` on all ordered pairs of the given generators.
pub fn check_skew<B: LambdaBracket + ?Sized>(br: &B, gens: &[GenId]) -> Result<Report, PvaError> {
    let mut rep = Report::new("skewsymmetry");
    for (x, &a) in gens.iter().enumerate() {
        for &b in &gens[x..] {
            let (fa, fb) = (DiffPoly::gen(a), DiffPoly::gen(b));
            let lhs = br.bracket(&fb, &fa)?;
            let rhs = br.bracket(&fa, &fb)?.flip().neg();
            let diff = lhs.sub(&rhs);
            rep.record(format!("{} {}", a, b), diff.is_zero(), || format!("difference {}", diff));
        }
    }
    Ok(rep)
}

fn bracket_lambda_mu<B: LambdaBracket + ?Sized>(
    br: &B,
    a: &DiffPoly,
    b: &DiffPoly,
    c: &DiffPoly,
    swap: bool,
) -> Result<Lambda2, PvaError> {
    // {a_λ {b_μ c}}; with `swap` the exponents are recorded as (μ, λ).
    let mut out = Lambda2::default();
    for (q, x) in br.bracket(b, c)?.coeffs() {
        for (p, y) in br.bracket(a, x)?.coeffs() {
            out.add_coeff(if swap { (q, p) } else { (p, q) }, y);
        }
    }
    Ok(out)
}

/// Jacobi identity `{a_λ{b_μ c}} - {b_μ{a_λ c}} = {{a_λ b}_{λ+μ} c}` on all triples.
pub fn check_jacobi<B: LambdaBracket + ?Sized>(br: &B, gens: &[GenId]) -> Result<Report, PvaError> {
    let mut rep = Report::new("jacobi");
    for &a in gens {
        for &b in gens {
            for &c in gens {
                let (fa, fb, fc) = (DiffPoly::gen(a), DiffPoly::gen(b), DiffPoly::gen(c));
                let t1 = bracket_lambda_mu(br, &fa, &fb, &fc, false)?;
                let t2 = bracket_lambda_mu(br, &fb, &fa, &fc, true)?;
                let mut t3 = Lambda2::default();
                for (p, y) in br.bracket(&fa, &fb)?.coeffs() {
                    for (r, z) in br.bracket(y, &fc)?.coeffs() {
                        for s in 0..=r {
                            t3.add_coeff((p + s, r - s), &z.scale(&binom(r as i64, s)));
                        }
                    }
                }
                let diff = t1.sub(&t2).sub(&t3);
                rep.record(format!("{} {} {}", a, b, c), diff.is_zero(), || format!("difference {}", diff));
            }
        }
    }
    Ok(rep)
}

/// Sesquilinearity `{∂f_λ g} = -λ{f_λ g}` and `{f_λ ∂g} = (λ+∂){f_λ g}`.
pub fn check_sesquilinearity<B: LambdaBracket + ?Sized>(br: &B, f: &DiffPoly, g: &DiffPoly) -> Result<bool, PvaError> {
    let base = br.bracket(f, g)?;
    let left = br.bracket(&f.d(), g)?;
    let mut want_left = LambdaPoly::zero();
    for (k, c) in base.coeffs() {
        want_left.add_coeff(k + 1, &-c);
    }
    let right = br.bracket(f, &g.d())?;
    Ok(left == want_left && right == base.shift_apply(1))
}

/// Generators occurring in any of the polynomials, in canonical order.
pub fn generators_of<'a, I: IntoIterator<Item = &'a DiffPoly>>(polys: I) -> Vec<GenId> {
    let set: BTreeSet<GenId> = polys.into_iter().flat_map(|p| p.gens()).collect();
    set.into_iter().collect()
}
