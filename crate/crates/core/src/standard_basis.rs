//! Reductions, minimal S-processes and Büchberger's algorithm for ideals of
//! `Q{x, y}` under the weighted (local) order.
//!
//! A reduction cancels the leading term of `g` against a monomial multiple
//! of some basis element, so the leading power strictly increases. With
//! truncated polynomials every reduction chain ends: either the remainder is
//! no longer reducible, or all of its terms have been pushed past the
//! horizon, which stands in for ideal membership.

use std::collections::VecDeque;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Exponent, Rational, TruncatedPoly, WeightedOrder};

/// Outcome of a final reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FinalReduction {
    /// The remainder is non-zero and not reducible.
    Finished(TruncatedPoly),
    /// Every term was pushed beyond the horizon.
    VanishedToHorizon,
}

impl FinalReduction {
    pub fn finished(&self) -> Option<&TruncatedPoly> {
        match self {
            FinalReduction::Finished(p) => Some(p),
            FinalReduction::VanishedToHorizon => None,
        }
    }

    pub fn into_finished(self) -> Option<TruncatedPoly> {
        match self {
            FinalReduction::Finished(p) => Some(p),
            FinalReduction::VanishedToHorizon => None,
        }
    }

    pub fn leading_power(&self) -> Option<Exponent> {
        self.finished().and_then(TruncatedPoly::leading_power)
    }
}

/// Picks one reducer among candidate basis indices (never called with an
/// empty slice).
pub trait ReducerChoice {
    fn choose(&mut self, candidates: &[usize], basis: &[TruncatedPoly]) -> usize;
}

/// The reducer whose leading power is largest in the weighted order, ties by
/// list index.
#[derive(Clone, Copy, Debug, Default)]
pub struct MostSpecific;

impl ReducerChoice for MostSpecific {
    fn choose(&mut self, candidates: &[usize], basis: &[TruncatedPoly]) -> usize {
        let order = basis[candidates[0]].order();
        let mut best = candidates[0];
        for &i in &candidates[1..] {
            let (li, lb) = (lp(&basis[i]), lp(&basis[best]));
            if order.compare(li, lb).is_gt() {
                best = i;
            }
        }
        best
    }
}

impl<F: FnMut(&[usize]) -> usize> ReducerChoice for F {
    fn choose(&mut self, candidates: &[usize], _basis: &[TruncatedPoly]) -> usize {
        self(candidates)
    }
}

fn lp(p: &TruncatedPoly) -> Exponent {
    p.leading_power().expect("basis elements are non-zero")
}

fn candidates(target: Exponent, basis: &[TruncatedPoly]) -> Vec<usize> {
    basis
        .iter()
        .enumerate()
        .filter(|(_, b)| b.leading_power().is_some_and(|e| e.divides(target)))
        .map(|(i, _)| i)
        .collect()
}

/// One reduction of `g` modulo `basis`, or `None` if `g` is zero or its
/// leading power is divisible by no leading power of `basis`.
pub fn reduce_step(g: &TruncatedPoly, basis: &[TruncatedPoly]) -> Option<TruncatedPoly> {
    reduce_step_with(g, basis, &mut MostSpecific)
}

pub fn reduce_step_with(
    g: &TruncatedPoly,
    basis: &[TruncatedPoly],
    choice: &mut dyn ReducerChoice,
) -> Option<TruncatedPoly> {
    let mut r = g.clone();
    reduce_in_place(&mut r, basis, choice).then_some(r)
}

fn reduce_in_place(
    r: &mut TruncatedPoly,
    basis: &[TruncatedPoly],
    choice: &mut dyn ReducerChoice,
) -> bool {
    let Some(lt) = r.leading() else {
        return false;
    };
    let cands = candidates(lt.exp, basis);
    if cands.is_empty() {
        return false;
    }
    let b = &basis[choice.choose(&cands, basis)];
    let blt = b.leading().expect("reducer is non-zero");
    let shift = lt.exp.checked_sub(blt.exp).expect("reducer divides");
    let c = -(&lt.coeff / &blt.coeff);
    r.add_scaled_shift(&c, shift, b);
    true
}

/// Reduces `g` modulo `basis` until it is no longer reducible or vanishes
/// below the horizon.
pub fn final_reduction(g: &TruncatedPoly, basis: &[TruncatedPoly]) -> FinalReduction {
    final_reduction_with(g, basis, &mut MostSpecific)
}

pub fn final_reduction_with(
    g: &TruncatedPoly,
    basis: &[TruncatedPoly],
    choice: &mut dyn ReducerChoice,
) -> FinalReduction {
    let mut r = g.clone();
    while reduce_in_place(&mut r, basis, choice) {}
    if r.is_zero() {
        FinalReduction::VanishedToHorizon
    } else {
        FinalReduction::Finished(r)
    }
}

/// The minimal S-process `lcm/x^a1 * g1 - (c1/c2) lcm/x^a2 * g2`.
pub fn s_process_min(g1: &TruncatedPoly, g2: &TruncatedPoly) -> TruncatedPoly {
    let lt1 = g1.leading().expect("g1 is non-zero");
    let lt2 = g2.leading().expect("g2 is non-zero");
    let l = lt1.exp.lcm(lt2.exp);
    let mut s = g1.mul_monomial(&Rational::one(), l.checked_sub(lt1.exp).unwrap());
    let c = -(&lt1.coeff / &lt2.coeff);
    s.add_scaled_shift(&c, l.checked_sub(lt2.exp).unwrap(), g2);
    s
}

/// A minimal standard basis, sorted by increasing x-power of the leading
/// powers (so the y-powers decrease).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardBasis {
    pub generators: Vec<TruncatedPoly>,
    pub leading_powers: Vec<Exponent>,
    pub order: WeightedOrder,
}

impl StandardBasis {
    /// Keeps the generators whose leading power is divisible by no other
    /// one (first occurrence wins on equal powers), then sorts.
    pub fn minimal_from(order: WeightedOrder, gens: Vec<TruncatedPoly>) -> Self {
        let gens: Vec<TruncatedPoly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        let lps: Vec<Exponent> = gens.iter().map(lp).collect();
        let mut keep: Vec<(Exponent, TruncatedPoly)> = Vec::new();
        for (i, g) in gens.into_iter().enumerate() {
            let redundant = lps.iter().enumerate().any(|(j, &e)| {
                j != i && e.divides(lps[i]) && (e != lps[i] || j < i)
            });
            if !redundant {
                keep.push((lps[i], g));
            }
        }
        keep.sort_by_key(|(e, _)| (e.a, std::cmp::Reverse(e.b)));
        let (leading_powers, generators) = keep.into_iter().unzip();
        StandardBasis {
            generators,
            leading_powers,
            order,
        }
    }

    pub fn codimension(&self) -> Codimension {
        codimension(&self.leading_powers)
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }
}

/// Pair budget for Büchberger before giving up.
const MAX_PAIRS: usize = 50_000;
const MAX_GENERATORS: usize = 400;

/// Büchberger's algorithm with a FIFO pair queue, followed by
/// minimalisation.
pub fn buchberger(gens: &[TruncatedPoly]) -> Result<StandardBasis> {
    buchberger_with(gens, &mut MostSpecific)
}

pub fn buchberger_with(
    gens: &[TruncatedPoly],
    choice: &mut dyn ReducerChoice,
) -> Result<StandardBasis> {
    let mut basis: Vec<TruncatedPoly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let Some(first) = basis.first() else {
        return Err(Error::ZeroIdeal);
    };
    let order = first.order();
    for g in &basis[1..] {
        if g.order() != order {
            return Err(Error::OrderMismatch {
                left: order.to_string(),
                right: g.order().to_string(),
            });
        }
    }
    let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
    for j in 0..basis.len() {
        for i in 0..j {
            queue.push_back((i, j));
        }
    }
    let mut processed = 0usize;
    while let Some((i, j)) = queue.pop_front() {
        processed += 1;
        if processed > MAX_PAIRS || basis.len() > MAX_GENERATORS {
            return Err(Error::HorizonExhausted);
        }
        let s = s_process_min(&basis[i], &basis[j]);
        if let FinalReduction::Finished(r) = final_reduction_with(&s, &basis, choice) {
            let k = basis.len();
            basis.push(r);
            for i in 0..k {
                queue.push_back((i, k));
            }
        }
    }
    Ok(StandardBasis::minimal_from(order, basis))
}

/// Codimension of an ideal from the leading powers of a standard basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Codimension {
    Finite(u64),
    Infinite,
}

impl Codimension {
    pub fn finite(self) -> Option<u64> {
        match self {
            Codimension::Finite(v) => Some(v),
            Codimension::Infinite => None,
        }
    }
}

/// `sum_{i>=2} b_{i-1} (a_i - a_{i-1})` over the minimal leading powers
/// sorted by `a`; infinite unless `a_1 = b_last = 0`.
pub fn codimension(leading_powers: &[Exponent]) -> Codimension {
    let mut lps: Vec<Exponent> = leading_powers
        .iter()
        .copied()
        .filter(|&e| !leading_powers.iter().any(|&o| o != e && o.divides(e)))
        .collect();
    lps.sort();
    lps.dedup();
    match (lps.first(), lps.last()) {
        (Some(first), Some(last)) if first.a == 0 && last.b == 0 => Codimension::Finite(
            lps.windows(2)
                .map(|w| w[0].b as u64 * (w[1].a - w[0].a) as u64)
                .sum(),
        ),
        _ => Codimension::Infinite,
    }
}

/// Minimal standard basis of `(X(f), f)` for `f` in adapted form, by the
/// three-case analysis: `{f, h}`, `{f, h, S(f, h)}`, or `{X(f), g}`.
pub fn basis_of_xf_f(xf: &TruncatedPoly, f: &TruncatedPoly) -> Result<StandardBasis> {
    let order = f.order();
    if xf.order() != order {
        return Err(Error::OrderMismatch {
            left: order.to_string(),
            right: xf.order().to_string(),
        });
    }
    if xf.is_zero() {
        return Err(Error::FDividesXf);
    }
    let n = order.n();
    if xf.leading_power() == Some(Exponent::new(0, n - 1)) {
        let g = final_reduction(f, std::slice::from_ref(xf))
            .into_finished()
            .ok_or(Error::HorizonExhausted)?;
        return Ok(StandardBasis::minimal_from(order, vec![xf.clone(), g]));
    }
    let h = final_reduction(xf, std::slice::from_ref(f))
        .into_finished()
        .ok_or(Error::FDividesXf)?;
    let gens = if lp(&h).b == 0 {
        vec![f.clone(), h]
    } else {
        let s = s_process_min(f, &h);
        vec![f.clone(), h, s]
    };
    Ok(StandardBasis::minimal_from(order, gens))
}

/// Whether a final reduction of each pairwise S-process vanishes, i.e. the
/// Büchberger stopping criterion holds for `basis`.
pub fn s_processes_vanish(basis: &[TruncatedPoly]) -> bool {
    (0..basis.len()).all(|j| {
        (0..j).all(|i| {
            let s = s_process_min(&basis[i], &basis[j]);
            s.is_zero() || final_reduction(&s, basis) == FinalReduction::VanishedToHorizon
        })
    })
}

/// Scales so the leading coefficient is one; zero stays zero.
pub fn monic(p: &TruncatedPoly) -> TruncatedPoly {
    match p.leading_coeff() {
        Some(c) if !c.is_zero() => p.scale(&(Rational::one() / c)),
        _ => p.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, Var};

    fn w(n: u32, m: u32) -> WeightedOrder {
        WeightedOrder::new(n, m).unwrap()
    }

    fn poly(order: WeightedOrder, terms: &[(i64, u32, u32)]) -> TruncatedPoly {
        TruncatedPoly::from_terms(
            order,
            order.default_horizon(),
            terms.iter().map(|&(c, a, b)| (int(c), Exponent::new(a, b))),
        )
    }

    #[test]
    fn reduce_step_examples() {
        let o = w(4, 5);
        let g = poly(o, &[(1, 0, 4), (1, 5, 0)]);
        let y = poly(o, &[(1, 0, 1)]);
        assert_eq!(reduce_step(&g, &[y]), Some(poly(o, &[(1, 5, 0)])));
        let g = poly(o, &[(1, 5, 0)]);
        assert_eq!(reduce_step(&g, &[poly(o, &[(1, 0, 4)])]), None);
    }

    #[test]
    fn reduce_y_fy_plus_n_f() {
        // -y f_y reduces by +n f to n x^m for f = x^m + y^n.
        let o = w(3, 7);
        let f = poly(o, &[(1, 7, 0), (1, 0, 3)]);
        let g = -&(&poly(o, &[(1, 0, 1)]) * &f.partial_derivative(Var::Y));
        let r = reduce_step(&g, &[f]).unwrap();
        let lt = r.leading().unwrap();
        assert_eq!((lt.coeff, lt.exp), (int(3), Exponent::new(7, 0)));
    }

    #[test]
    fn final_reduction_examples() {
        let o = w(4, 5);
        let b = poly(o, &[(1, 0, 4), (1, 5, 0)]);
        let g = &poly(o, &[(1, 1, 0)]) * &b;
        assert_eq!(final_reduction(&g, &[b.clone()]), FinalReduction::VanishedToHorizon);

        let o = w(3, 7);
        let f = poly(o, &[(1, 7, 0), (1, 0, 3)]);
        let xfx = &poly(o, &[(1, 1, 0)]) * &f.partial_derivative(Var::X);
        let r = final_reduction(&xfx, &[f]);
        assert_eq!(r, FinalReduction::Finished(poly(o, &[(7, 7, 0)])));

        let o = w(4, 5);
        let g = poly(o, &[(1, 5, 0), (3, 3, 2)]);
        assert_eq!(
            final_reduction(&g, &[poly(o, &[(1, 0, 4)])]),
            FinalReduction::Finished(g.clone())
        );
    }

    #[test]
    fn s_process_examples() {
        let o = w(2, 3);
        let x = poly(o, &[(1, 1, 0)]);
        let y = poly(o, &[(1, 0, 1)]);
        assert!(s_process_min(&x, &y).is_zero());

        let o = w(4, 5);
        let g1 = poly(o, &[(1, 0, 4), (1, 5, 0)]);
        let g2 = poly(o, &[(1, 0, 1)]);
        assert_eq!(s_process_min(&g1, &g2), poly(o, &[(1, 5, 0)]));
    }

    #[test]
    fn s_process_of_f_and_h_leads_with_mu_x_power() {
        // f = 2x^5 + y^4 + x^3y^2, h with lp (3,2): lt(S) = 2 x^{3+5}.
        let o = w(4, 5);
        let f = poly(o, &[(2, 5, 0), (1, 0, 4), (1, 3, 2)]);
        let h = poly(o, &[(2, 3, 2), (1, 6, 1)]);
        let s = s_process_min(&f, &h);
        let lt = s.leading().unwrap();
        assert_eq!((lt.coeff, lt.exp), (int(2), Exponent::new(8, 0)));
    }

    #[test]
    fn buchberger_examples() {
        let o = w(2, 3);
        let b = buchberger(&[poly(o, &[(1, 1, 0)]), poly(o, &[(1, 0, 1)])]).unwrap();
        assert_eq!(b.leading_powers, vec![Exponent::new(0, 1), Exponent::new(1, 0)]);

        let o = w(4, 5);
        let f = poly(o, &[(1, 5, 0), (1, 0, 4)]);
        let fx = f.partial_derivative(Var::X);
        let fy = f.partial_derivative(Var::Y);
        let b = buchberger(&[f, fx, fy]).unwrap();
        assert_eq!(b.leading_powers, vec![Exponent::new(0, 3), Exponent::new(4, 0)]);
        assert_eq!(b.codimension(), Codimension::Finite(12));
        assert!(s_processes_vanish(&b.generators));
    }

    #[test]
    fn buchberger_rejects_zero_ideal() {
        let o = w(2, 3);
        assert_eq!(
            buchberger(&[TruncatedPoly::zero(o, 24)]),
            Err(Error::ZeroIdeal)
        );
    }

    #[test]
    fn codimension_examples() {
        let e = Exponent::new;
        assert_eq!(codimension(&[e(0, 4), e(3, 2), e(9, 0)]), Codimension::Finite(24));
        assert_eq!(codimension(&[e(0, 1), e(1, 0)]), Codimension::Finite(1));
        assert_eq!(codimension(&[e(0, 4), e(2, 1)]), Codimension::Infinite);
    }

    #[test]
    fn basis_of_xf_f_cases() {
        let o = w(4, 5);
        let f = poly(o, &[(1, 5, 0), (1, 0, 4)]);
        // Case 1a.
        let xf = &poly(o, &[(1, 1, 0)]) * &f.partial_derivative(Var::X);
        let b = basis_of_xf_f(&xf, &f).unwrap();
        assert_eq!(b.leading_powers, vec![Exponent::new(0, 4), Exponent::new(5, 0)]);
        // Case 2.
        let xf = -&f.partial_derivative(Var::Y);
        let b = basis_of_xf_f(&xf, &f).unwrap();
        assert_eq!(b.leading_powers, vec![Exponent::new(0, 3), Exponent::new(5, 0)]);
        // Case 1b: omega = 4x dy - 5y dx on x^5 + y^4 + x^3 y^2.
        let f = poly(o, &[(1, 5, 0), (1, 0, 4), (1, 3, 2)]);
        let xf = &(&poly(o, &[(4, 1, 0)]) * &f.partial_derivative(Var::X))
            + &(&poly(o, &[(5, 0, 1)]) * &f.partial_derivative(Var::Y));
        let b = basis_of_xf_f(&xf, &f).unwrap();
        assert_eq!(
            b.leading_powers,
            vec![Exponent::new(0, 4), Exponent::new(3, 2), Exponent::new(8, 0)]
        );
        let direct = buchberger(&[xf, f]).unwrap();
        assert_eq!(direct.leading_powers, b.leading_powers);
    }

    #[test]
    fn f_dividing_xf_is_reported() {
        let o = w(4, 5);
        let f = poly(o, &[(1, 5, 0), (1, 0, 4)]);
        let xf = &poly(o, &[(3, 2, 1)]) * &f;
        assert_eq!(basis_of_xf_f(&xf, &f), Err(Error::FDividesXf));
    }
}
