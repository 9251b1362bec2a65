//! Seeded random curves and 1-forms with small coefficients.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::curve::{CurveEquation, CuspidalSets, Semigroup};
use crate::differentials::OneForm;
use crate::error::Result;
use crate::poly::{int, Exponent, Rational, TruncatedPoly, Var};

/// Uniform on `{-5..5} \ {0}` divided by a denominator in `1..=3`.
pub fn coefficient<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    let mut p = 0i64;
    while p == 0 {
        p = rng.gen_range(-5..=5);
    }
    Rational::new(BigInt::from(p), BigInt::from(rng.gen_range(1..=3)))
}

/// A nice equation where each `z_j` is present with probability 1/2.
pub fn nice_curve<R: Rng + ?Sized>(sg: Semigroup, rng: &mut R) -> Result<CurveEquation> {
    let cs = CuspidalSets::new(&sg);
    let mut z: Vec<(u64, Rational)> = Vec::new();
    for &j in &cs.j {
        if rng.gen_bool(0.5) {
            z.push((j, coefficient(rng)));
        }
    }
    CurveEquation::nice(sg, z)
}

/// A nice equation with `z_ℓ ≠ 0` for the smallest `ℓ ∈ J`, so the Zariski
/// invariant is finite; `None` when `J` is empty.
pub fn nice_curve_with_zariski<R: Rng + ?Sized>(
    sg: Semigroup,
    rng: &mut R,
) -> Result<Option<CurveEquation>> {
    let cs = CuspidalSets::new(&sg);
    let Some(&j0) = cs.j.first() else {
        return Ok(None);
    };
    let mut z: Vec<(u64, Rational)> = vec![(j0, coefficient(rng))];
    for &j in &cs.j[1..] {
        if rng.gen_bool(0.5) {
            z.push((j, coefficient(rng)));
        }
    }
    CurveEquation::nice(sg, z).map(Some)
}

fn sparse_poly<R: Rng + ?Sized>(eq: &CurveEquation, rng: &mut R, terms: usize) -> TruncatedPoly {
    let (n, m) = (eq.n(), eq.m());
    let mut p = TruncatedPoly::zero(eq.order(), eq.horizon());
    for _ in 0..terms {
        let e = Exponent::new(rng.gen_range(0..=m), rng.gen_range(0..=n));
        p.add_term(coefficient(rng), e);
    }
    p
}

/// A random 1-form `A dx + B dy`. Two thirds of the draws also get a multiple of
/// `df` or a low-order cancellation between a `dx` and a `dy` term, so that
/// leading monomials often cancel on the curve.
pub fn one_form<R: Rng + ?Sized>(eq: &CurveEquation, rng: &mut R) -> OneForm {
    let order = eq.order();
    let h = eq.horizon();
    let (ka, kb) = (rng.gen_range(0..=3), rng.gen_range(0..=3));
    let a = sparse_poly(eq, rng, ka);
    let b = sparse_poly(eq, rng, kb);
    let mut omega = OneForm::new(a, b);
    match [0u8, 1, 2].choose(rng).copied().unwrap_or(0) {
        1 => {
            let g = sparse_poly(eq, rng, 2);
            omega = &omega + &OneForm::exact(eq.poly()).mul_poly(&g);
        }
        2 => {
            // m x^{a} y^{b+1} dx - n x^{a+1} y^{b} dy has a high value.
            let (a, b) = (rng.gen_range(0..3), rng.gen_range(0..3));
            let c = coefficient(rng);
            let dx = OneForm::monomial(order, h, &c * int(eq.m() as i64), Exponent::new(a, b + 1), Var::X);
            let dy = OneForm::monomial(order, h, -&c * int(eq.n() as i64), Exponent::new(a + 1, b), Var::Y);
            omega = &(&omega + &dx) + &dy;
        }
        _ => {}
    }
    omega
}
