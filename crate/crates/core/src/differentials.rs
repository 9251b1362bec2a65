//! 1-forms on a cusp, their differential values, and Delorme's algorithm for
//! a minimal standard basis of the module of differentials.
//!
//! The value of `ω` is read off the leading power `(a, b)` of a final
//! reduction of `X_ω(f) = B f_x - A f_y` modulo `f`:
//! `ν(ω) = n(a+1) + m(b+1) - nm`. Two independent checks exist: pulling `ω`
//! back along a Newton–Puiseux parametrization, and an echelon form of the
//! pullbacks of all monomial forms below the conductor.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::curve::{series_order, CurveEquation, Parametrization, Semigroup};
use crate::error::{Error, Result};
use crate::poly::{Exponent, Rational, TruncatedPoly, Var, WeightedOrder};
use crate::semimodule::{AbstractSemimodule, SemimoduleBasis};
use crate::standard_basis::{final_reduction, FinalReduction};
use crate::valuation::Valuation;

/// `A dx + B dy`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneForm {
    pub a: TruncatedPoly,
    pub b: TruncatedPoly,
}

impl OneForm {
    pub fn new(a: TruncatedPoly, b: TruncatedPoly) -> Self {
        assert_eq!(a.order(), b.order(), "weighted orders differ");
        OneForm { a, b }
    }

    pub fn zero(order: WeightedOrder, horizon: u64) -> Self {
        let z = TruncatedPoly::zero(order, horizon);
        OneForm::new(z.clone(), z)
    }

    pub fn dx(order: WeightedOrder, horizon: u64) -> Self {
        OneForm::new(
            TruncatedPoly::one(order, horizon),
            TruncatedPoly::zero(order, horizon),
        )
    }

    pub fn dy(order: WeightedOrder, horizon: u64) -> Self {
        OneForm::new(
            TruncatedPoly::zero(order, horizon),
            TruncatedPoly::one(order, horizon),
        )
    }

    /// `c x^a y^b dx` or `c x^a y^b dy`.
    pub fn monomial(order: WeightedOrder, horizon: u64, c: Rational, e: Exponent, var: Var) -> Self {
        let m = TruncatedPoly::monomial(order, horizon, c, e);
        let z = TruncatedPoly::zero(order, horizon);
        match var {
            Var::X => OneForm::new(m, z),
            Var::Y => OneForm::new(z, m),
        }
    }

    /// `dg = g_x dx + g_y dy`.
    pub fn exact(g: &TruncatedPoly) -> Self {
        OneForm::new(g.partial_derivative(Var::X), g.partial_derivative(Var::Y))
    }

    pub fn order(&self) -> WeightedOrder {
        self.a.order()
    }

    pub fn horizon(&self) -> u64 {
        self.a.horizon().min(self.b.horizon())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        OneForm::new(self.a.scale(c), self.b.scale(c))
    }

    pub fn mul_monomial(&self, c: &Rational, e: Exponent) -> Self {
        OneForm::new(self.a.mul_monomial(c, e), self.b.mul_monomial(c, e))
    }

    pub fn mul_poly(&self, g: &TruncatedPoly) -> Self {
        OneForm::new(g * &self.a, g * &self.b)
    }

    /// `self += c x^e other`.
    pub fn add_scaled_shift(&mut self, c: &Rational, e: Exponent, other: &OneForm) {
        self.a.add_scaled_shift(c, e, &other.a);
        self.b.add_scaled_shift(c, e, &other.b);
    }

    pub fn truncate(&self, horizon: u64) -> Self {
        OneForm::new(self.a.truncate(horizon), self.b.truncate(horizon))
    }
}

impl std::ops::Add for &OneForm {
    type Output = OneForm;
    fn add(self, rhs: &OneForm) -> OneForm {
        OneForm::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl fmt::Display for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) dx + ({}) dy", self.a, self.b)
    }
}

/// `X_ω(f) = B f_x - A f_y`.
pub fn apply_vector_field(omega: &OneForm, f: &TruncatedPoly) -> TruncatedPoly {
    let mut r = &omega.b * &f.partial_derivative(Var::X);
    r.add_scaled_shift(
        &-Rational::one(),
        Exponent::ZERO,
        &(&omega.a * &f.partial_derivative(Var::Y)),
    );
    r
}

/// `n(a+1) + m(b+1) - nm` for the leading power of a final reduction.
pub fn value_from_leading_power(e: Exponent, n: u32, m: u32) -> u64 {
    let v = n as u64 * (e.a as u64 + 1) + m as u64 * (e.b as u64 + 1);
    v.checked_sub(n as u64 * m as u64)
        .expect("a finished reduction has weighted degree above nm - n - m")
}

/// Inverse of [`value_from_leading_power`] among powers with `b < n`.
pub fn leading_power_from_value(v: u64, sg: &Semigroup) -> Option<Exponent> {
    let d = (v + sg.nm()).checked_sub(sg.n() as u64 + sg.m() as u64)?;
    sg.decompose(d)
}

/// A final reduction of `X_ω(f)` modulo `f` and the value it encodes.
pub fn reduce_form(omega: &OneForm, f: &TruncatedPoly) -> (Valuation, FinalReduction) {
    let order = f.order();
    let x = apply_vector_field(omega, f);
    let r = final_reduction(&x, std::slice::from_ref(f));
    let v = match r.leading_power() {
        Some(e) => Valuation::Finite(value_from_leading_power(e, order.n(), order.m())),
        None => Valuation::InfiniteToHorizon,
    };
    (v, r)
}

/// `ν_C(ω)` from the implicit equation.
pub fn differential_value(omega: &OneForm, eq: &CurveEquation) -> Valuation {
    reduce_form(omega, eq.poly()).0
}

/// `ν_{n,m}(ω) = min(ν_{n,m}(xA), ν_{n,m}(yB))`; `None` for the zero form.
pub fn monomial_value(omega: &OneForm) -> Option<u64> {
    let o = omega.order();
    let va = omega.a.order_degree().map(|d| d + o.n() as u64);
    let vb = omega.b.order_degree().map(|d| d + o.m() as u64);
    match (va, vb) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, y) => x.or(y),
    }
}

/// `μ⁺` with `ν(η₁ + μ⁺ η₂) > ν(η₁)`, from the leading coefficients of the
/// two final reductions.
pub fn tuning_constant(eta1: &OneForm, eta2: &OneForm, eq: &CurveEquation) -> Result<Rational> {
    let (v1, r1) = reduce_form(eta1, eq.poly());
    let (v2, r2) = reduce_form(eta2, eq.poly());
    match (r1.finished(), r2.finished()) {
        (Some(h1), Some(h2)) if v1 == v2 => {
            Ok(-(h1.leading_coeff().unwrap() / h2.leading_coeff().unwrap()))
        }
        _ => Err(Error::ValueMismatch {
            left: v1.to_string(),
            right: v2.to_string(),
        }),
    }
}

/// `ν_C(ω) = ord_t(φ*ω) + 1`, read only as far as the form's own horizon
/// allows (so a truncated form means the same thing on both paths).
pub fn oracle_differential_value(omega: &OneForm, param: &Parametrization) -> Valuation {
    let o = omega.order();
    let visible = (omega.horizon() + o.n() as u64 + o.m() as u64)
        .saturating_sub(o.n() as u64 * o.m() as u64);
    let series = param.pullback_form(&omega.a, &omega.b);
    let cut = (visible as usize).min(series.len());
    match series_order(&series[..cut]) {
        Valuation::Finite(k) => Valuation::Finite(k + 1),
        v => v,
    }
}

/// A minimal standard basis of the module of differentials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferentialBasis {
    /// `ω_{-1} = dx, ω_0 = dy, ω_1, ..., ω_s`.
    pub forms: Vec<OneForm>,
    pub values: SemimoduleBasis,
    /// Final reductions `h_i` of `X_{ω_i}(f)` modulo `f`.
    pub reductions: Vec<TruncatedPoly>,
}

impl DifferentialBasis {
    pub fn form(&self, i: i32) -> &OneForm {
        &self.forms[(i + 1) as usize]
    }

    pub fn reduction(&self, i: i32) -> &TruncatedPoly {
        &self.reductions[(i + 1) as usize]
    }

    pub fn semimodule(&self) -> &AbstractSemimodule {
        &self.values.semimodule
    }

    pub fn leading_powers(&self) -> Vec<Exponent> {
        self.reductions
            .iter()
            .map(|h| h.leading_power().expect("finished reduction"))
            .collect()
    }
}

/// The only `(a, b)` with `na + mb = g`, failing if there are two.
fn unique_decomposition(sg: &Semigroup, g: u64) -> Result<Option<Exponent>> {
    let Some(e) = sg.decompose(g) else {
        return Ok(None);
    };
    if g >= sg.nm() + sg.m() as u64 * e.b as u64 {
        return Err(Error::AmbiguousAxis(format!(
            "{g} = {}·{} + {}·{} is not the only way to write it",
            sg.n(),
            e.a,
            sg.m(),
            e.b
        )));
    }
    Ok(Some(e))
}

fn finished(r: FinalReduction, i: i32) -> Result<TruncatedPoly> {
    r.into_finished().ok_or(Error::ReductionVanished(i))
}

/// Delorme's algorithm.
///
/// Works at horizon `2nm`, enough to see every value below the conductor;
/// a reduction chain reaching the conductor (or vanishing) means the
/// candidate form has infinite value and the basis is complete.
pub fn delorme(eq: &CurveEquation) -> Result<DifferentialBasis> {
    let sg = *eq.semigroup();
    let (n, m) = (sg.n(), sg.m());
    let horizon = 2 * sg.nm();
    let work = eq.with_horizon(horizon);
    let f = work.poly();
    let order = work.order();
    if f.leading_power() != Some(Exponent::new(0, n)) {
        return Err(Error::NotAdapted(format!("leading power of f is not (0, {n})")));
    }
    let fs = std::slice::from_ref(f);
    let conductor = sg.conductor();

    let mut forms = vec![OneForm::dx(order, horizon), OneForm::dy(order, horizon)];
    let mut reds = Vec::new();
    for (i, w) in forms.iter().enumerate() {
        reds.push(finished(reduce_form(w, f).1, i as i32 - 1)?);
    }
    let mut sm = AbstractSemimodule::trivial(sg);
    let one = Rational::one();

    for i in 1..n as i32 {
        let u = sm.axis(i);
        let l_prev = sm.lambda(i - 1);
        let e1 = unique_decomposition(&sg, u - l_prev)?.expect("u_i ∈ λ_{i-1} + Γ");
        let mut splits = Vec::new();
        for k in (-1..=i - 2).rev() {
            let lk = sm.lambda(k);
            if u >= lk {
                if let Some(e2) = unique_decomposition(&sg, u - lk)? {
                    splits.push((k, e2));
                }
            }
        }
        let &(k, e2) = splits
            .iter()
            .find(|(_, e2)| (e1.b == 0 && e2.a == 0) || (e1.a == 0 && e2.b == 0))
            .or(splits.first())
            .expect("u_i ∈ Λ_{i-2}");

        let r1 = finished(final_reduction(&reds[i as usize].mul_monomial(&one, e1), fs), i)?;
        let r2 = finished(
            final_reduction(&reds[(k + 1) as usize].mul_monomial(&one, e2), fs),
            i,
        )?;
        debug_assert_eq!(r1.leading_power(), r2.leading_power());
        let mu = -(r1.leading_coeff().unwrap() / r2.leading_coeff().unwrap());
        let mut eta = forms[i as usize].mul_monomial(&one, e1);
        eta.add_scaled_shift(&mu, e2, &forms[(k + 1) as usize]);
        let mut r = r1;
        r.add_scaled_shift(&mu, Exponent::ZERO, &r2);
        let mut current = final_reduction(&r, fs);

        let found = loop {
            let Some(h) = current.into_finished() else {
                break None;
            };
            let v = value_from_leading_power(h.leading_power().unwrap(), n, m);
            if v >= conductor {
                break None;
            }
            let Some(k) = sm.last_level_containing(v, i - 1) else {
                break Some((v, h));
            };
            let e = unique_decomposition(&sg, v - sm.lambda(k))?.expect("v ∈ λ_k + Γ");
            let g = finished(
                final_reduction(&reds[(k + 1) as usize].mul_monomial(&one, e), fs),
                i,
            )?;
            let c = -(h.leading_coeff().unwrap() / g.leading_coeff().unwrap());
            eta.add_scaled_shift(&c, e, &forms[(k + 1) as usize]);
            let mut next = h;
            next.add_scaled_shift(&c, Exponent::ZERO, &g);
            current = final_reduction(&next, fs);
        };
        let Some((v, h)) = found else { break };
        let mut basis = sm.basis().to_vec();
        basis.push(v);
        sm = AbstractSemimodule::new(sg, basis)?;
        forms.push(eta);
        reds.push(h);
    }

    let reductions = forms
        .iter()
        .enumerate()
        .map(|(i, w)| finished(reduce_form(w, f).1, i as i32 - 1))
        .collect::<Result<Vec<_>>>()?;
    Ok(DifferentialBasis {
        forms,
        values: SemimoduleBasis::new(sm),
        reductions,
    })
}

/// The semimodule of differential values, found without any reduction:
/// every value below the conductor is the value of a combination of
/// monomial forms of monomial value below the conductor, so an echelon
/// form of their pullbacks lists them all.
pub fn semimodule_by_echelon(eq: &CurveEquation) -> Result<AbstractSemimodule> {
    let sg = *eq.semigroup();
    let c = sg.conductor();
    let param = crate::curve::newton_puiseux(eq, c.max(1))?;
    let order = eq.order();
    let horizon = order.default_horizon();
    let len = c.saturating_sub(1) as usize;
    let mut pivots: BTreeMap<usize, Vec<Rational>> = BTreeMap::new();
    let (n, m) = (sg.n() as u64, sg.m() as u64);
    for b in 0..=c / m {
        for a in 0..=c / n {
            let e = Exponent::new(a as u32, b as u32);
            for (var, mv) in [(Var::X, n * (a + 1) + m * b), (Var::Y, n * a + m * (b + 1))] {
                if mv >= c {
                    continue;
                }
                let w = OneForm::monomial(order, horizon, Rational::one(), e, var);
                let mut row = param.pullback_form(&w.a, &w.b);
                row.truncate(len);
                insert_row(&mut pivots, row);
            }
        }
    }
    let values: Vec<u64> = pivots.keys().map(|&p| p as u64 + 1).collect();
    Ok(AbstractSemimodule::from_members(sg, |k| values.binary_search(&k).is_ok()))
}

fn insert_row(pivots: &mut BTreeMap<usize, Vec<Rational>>, mut row: Vec<Rational>) {
    while let Some(p) = row.iter().position(|c| !c.is_zero()) {
        match pivots.get(&p) {
            Some(piv) => {
                let f = &row[p] / &piv[p];
                for (x, y) in row.iter_mut().zip(piv).skip(p) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
            None => {
                pivots.insert(p, row);
                return;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{default_parametrization, Semigroup};
    use crate::poly::int;

    fn nice(n: u32, m: u32, z: &[(u64, i64)]) -> CurveEquation {
        CurveEquation::nice(
            Semigroup::new(n, m).unwrap(),
            z.iter().map(|&(j, c)| (j, int(c))),
        )
        .unwrap()
    }

    fn mono(eq: &CurveEquation, c: i64, a: u32, b: u32, var: Var) -> OneForm {
        OneForm::monomial(eq.order(), eq.horizon(), int(c), Exponent::new(a, b), var)
    }

    #[test]
    fn vector_field_examples() {
        let eq = nice(4, 5, &[]);
        let f = eq.poly();
        let dx = OneForm::dx(eq.order(), eq.horizon());
        assert_eq!(apply_vector_field(&dx, f), -&f.partial_derivative(Var::Y));
        let xdy = mono(&eq, 1, 1, 0, Var::Y);
        let x = TruncatedPoly::x(eq.order(), eq.horizon());
        assert_eq!(apply_vector_field(&xdy, f), &x * &f.partial_derivative(Var::X));
    }

    #[test]
    fn value_examples() {
        let eq = nice(4, 5, &[(2, 1)]);
        assert_eq!(differential_value(&mono(&eq, 1, 0, 0, Var::X), &eq), Valuation::Finite(4));
        assert_eq!(differential_value(&mono(&eq, 1, 0, 0, Var::Y), &eq), Valuation::Finite(5));
        let w = &mono(&eq, 4, 1, 0, Var::Y) + &mono(&eq, -5, 0, 1, Var::X);
        assert_eq!(differential_value(&w, &eq), Valuation::Finite(11));
        assert_eq!(monomial_value(&w), Some(9));
        assert_eq!(
            differential_value(&OneForm::exact(eq.poly()), &eq),
            Valuation::InfiniteToHorizon
        );
    }

    #[test]
    fn oracle_examples() {
        let eq = nice(4, 5, &[(2, 1)]);
        let p = default_parametrization(&eq).unwrap();
        assert_eq!(oracle_differential_value(&mono(&eq, 1, 0, 0, Var::X), &p), Valuation::Finite(4));
        assert_eq!(oracle_differential_value(&mono(&eq, 1, 0, 0, Var::Y), &p), Valuation::Finite(5));
        let w = &mono(&eq, 4, 1, 0, Var::Y) + &mono(&eq, -5, 0, 1, Var::X);
        assert_eq!(oracle_differential_value(&w, &p), Valuation::Finite(11));
        assert_eq!(
            oracle_differential_value(&OneForm::exact(eq.poly()), &p),
            Valuation::InfiniteToHorizon
        );
    }

    #[test]
    fn tuning_examples() {
        let eq = nice(4, 9, &[(1, 1)]);
        let xdy = mono(&eq, 1, 1, 0, Var::Y);
        let ydx = mono(&eq, 1, 0, 1, Var::X);
        assert_eq!(tuning_constant(&xdy, &ydx, &eq).unwrap(), crate::poly::rat(-9, 4));
        assert_eq!(tuning_constant(&xdy, &xdy, &eq).unwrap(), int(-1));
        assert!(matches!(
            tuning_constant(&xdy, &mono(&eq, 1, 0, 0, Var::X), &eq),
            Err(Error::ValueMismatch { .. })
        ));
    }

    #[test]
    fn delorme_examples() {
        let d = delorme(&nice(4, 5, &[])).unwrap();
        assert_eq!(d.values.lambdas(), &[4, 5]);
        let d = delorme(&nice(4, 5, &[(2, 1)])).unwrap();
        assert_eq!(d.values.lambdas(), &[4, 5, 11]);
        let d = delorme(&nice(4, 9, &[(1, 1)])).unwrap();
        assert_eq!(d.values.lambdas(), &[4, 9, 14, 19]);
        assert_eq!(d.values.axes, vec![13, 18]);
        for i in 1..=d.values.s() {
            assert_eq!(monomial_value(d.form(i)), Some(d.values.t(i)));
        }
    }

    #[test]
    fn echelon_matches_delorme() {
        for eq in [nice(4, 5, &[(2, 1)]), nice(4, 9, &[(1, 1)]), nice(5, 7, &[(4, 2), (6, -1)]), nice(6, 7, &[(3, 1), (4, -2), (9, 1)])] {
            let d = delorme(&eq).unwrap();
            assert_eq!(&semimodule_by_echelon(&eq).unwrap(), d.semimodule());
        }
    }
}
