//! The extended Jacobian ideal `(f, f_x, f_y)`, built two ways: from the
//! reductions `h_i` of `X_{ω_i}(f)` for a minimal basis of differentials,
//! and by Büchberger directly.

use std::collections::BTreeSet;

use crate::curve::CurveEquation;
use crate::differentials::{reduce_form, value_from_leading_power, DifferentialBasis};
use crate::error::{Error, Result};
use crate::poly::{Exponent, TruncatedPoly, Var};
use crate::semimodule::AbstractSemimodule;
use crate::standard_basis::{buchberger, Codimension, StandardBasis};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobianBasis {
    /// `h_{-1}, h_0, ..., h_s`.
    pub h_list: Vec<TruncatedPoly>,
    pub leading_powers: Vec<Exponent>,
}

impl JacobianBasis {
    pub fn h(&self, i: i32) -> &TruncatedPoly {
        &self.h_list[(i + 1) as usize]
    }

    pub fn leading_power_set(&self) -> BTreeSet<Exponent> {
        self.leading_powers.iter().copied().collect()
    }

    /// `λ_i = n(a_i+1) + m(b_i+1) - nm` for each leading power.
    pub fn values(&self, n: u32, m: u32) -> Vec<u64> {
        self.leading_powers
            .iter()
            .map(|&e| value_from_leading_power(e, n, m))
            .collect()
    }

    /// The semimodule generated by [`JacobianBasis::values`].
    pub fn semimodule(&self, eq: &CurveEquation) -> AbstractSemimodule {
        let sg = *eq.semigroup();
        let values = self.values(sg.n(), sg.m());
        AbstractSemimodule::from_members(sg, |k| {
            values.iter().any(|&l| k >= l && sg.contains(k - l))
        })
    }

    pub fn codimension(&self) -> Codimension {
        crate::standard_basis::codimension(&self.leading_powers)
    }
}

fn invariant(ok: bool, what: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::PreconditionViolation(what()))
    }
}

/// `h_i` = final reduction of `X_{ω_i}(f)` modulo `f`.
pub fn jacobian_basis_via_differentials(
    eq: &CurveEquation,
    diff: &DifferentialBasis,
) -> Result<JacobianBasis> {
    let (n, m) = (eq.n(), eq.m());
    let mut h_list = Vec::with_capacity(diff.forms.len());
    for (k, omega) in diff.forms.iter().enumerate() {
        let h = omega.horizon().min(eq.horizon());
        let f = eq.poly().truncate(h);
        let (_, r) = reduce_form(&omega.truncate(h), &f);
        h_list.push(r.into_finished().ok_or(Error::ReductionVanished(k as i32 - 1))?);
    }
    let leading_powers: Vec<Exponent> = h_list
        .iter()
        .map(|h| h.leading_power().expect("finished"))
        .collect();
    invariant(leading_powers[0] == Exponent::new(0, n - 1), || {
        format!("lp(h_-1) = {} is not (0,{})", leading_powers[0], n - 1)
    })?;
    invariant(leading_powers[1] == Exponent::new(m - 1, 0), || {
        format!("lp(h_0) = {} is not ({},0)", leading_powers[1], m - 1)
    })?;
    for (i, &e) in leading_powers.iter().enumerate() {
        for (j, &g) in leading_powers.iter().enumerate() {
            invariant(i == j || !e.divides(g), || format!("{e} divides {g}"))?;
        }
    }
    Ok(JacobianBasis {
        h_list,
        leading_powers,
    })
}

/// Büchberger on `{f, f_x, f_y}`.
pub fn jacobian_basis_direct(eq: &CurveEquation) -> Result<StandardBasis> {
    let f = eq.poly();
    buchberger(&[
        f.clone(),
        f.partial_derivative(Var::X),
        f.partial_derivative(Var::Y),
    ])
}

/// Codimension of `(f, f_x, f_y)`.
pub fn tjurina_number(eq: &CurveEquation) -> Result<u64> {
    let sb = jacobian_basis_direct(eq)?;
    match sb.codimension() {
        Codimension::Finite(t) => Ok(t),
        Codimension::Infinite => Err(Error::PreconditionViolation(
            "Jacobian ideal has infinite codimension".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::Semigroup;
    use crate::differentials::delorme;
    use crate::poly::{int, Rational};

    fn adapted(n: u32, m: u32, terms: &[(i64, u32, u32)]) -> CurveEquation {
        let mut t: Vec<(Rational, Exponent)> = vec![(int(1), Exponent::new(m, 0)), (int(1), Exponent::new(0, n))];
        t.extend(terms.iter().map(|&(c, a, b)| (int(c), Exponent::new(a, b))));
        CurveEquation::adapted(Semigroup::new(n, m).unwrap(), t).unwrap()
    }

    fn lp_set(v: &[(u32, u32)]) -> BTreeSet<Exponent> {
        v.iter().map(|&(a, b)| Exponent::new(a, b)).collect()
    }

    #[test]
    fn tjurina_examples() {
        assert_eq!(tjurina_number(&adapted(4, 5, &[])).unwrap(), 12);
        assert_eq!(tjurina_number(&adapted(4, 5, &[(1, 3, 2)])).unwrap(), 11);
        assert_eq!(tjurina_number(&adapted(2, 3, &[])).unwrap(), 2);
    }

    #[test]
    fn both_constructions_agree() {
        let cases = [
            (adapted(4, 5, &[]), lp_set(&[(0, 3), (4, 0)])),
            (adapted(4, 5, &[(1, 3, 2)]), lp_set(&[(0, 3), (4, 0), (3, 2)])),
            (adapted(4, 9, &[(1, 7, 1)]), lp_set(&[(0, 3), (8, 0), (7, 1), (6, 2)])),
        ];
        for (eq, want) in cases {
            let diff = delorme(&eq).unwrap();
            let jb = jacobian_basis_via_differentials(&eq, &diff).unwrap();
            assert_eq!(jb.leading_power_set(), want);
            let direct = jacobian_basis_direct(&eq).unwrap();
            let got: BTreeSet<Exponent> = direct.leading_powers.iter().copied().collect();
            assert_eq!(got, want);
            assert_eq!(jb.values(eq.n(), eq.m()), diff.values.lambdas());
            assert_eq!(&jb.semimodule(&eq), diff.semimodule());
        }
    }
}
