//! Semigroups `<n, m>`, the cuspidal sets `P`, `J`, `M`, curve equations in
//! adapted or nice form, and Newton–Puiseux parametrizations over `Q`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{int, Exponent, Rational, TruncatedPoly, WeightedOrder};
use crate::valuation::Valuation;

/// The semigroup `<n, m>` of a cusp with Puiseux pair `(n, m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Semigroup {
    n: u32,
    m: u32,
    conductor: u64,
}

impl Semigroup {
    pub fn new(n: u32, m: u32) -> Result<Self> {
        WeightedOrder::new(n, m)?;
        Ok(Semigroup {
            n,
            m,
            conductor: (n as u64 - 1) * (m as u64 - 1),
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn nm(&self) -> u64 {
        self.n as u64 * self.m as u64
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn order(&self) -> WeightedOrder {
        WeightedOrder::new(self.n, self.m).expect("validated pair")
    }

    /// `k = na + mb` with the smallest possible `b` (so `b < n`).
    pub fn decompose(&self, k: u64) -> Option<Exponent> {
        let (n, m) = (self.n as u64, self.m as u64);
        (0..n)
            .take_while(|b| m * b <= k)
            .find(|b| (k - m * b) % n == 0)
            .map(|b| Exponent::new(((k - m * b) / n) as u32, b as u32))
    }

    pub fn contains(&self, k: u64) -> bool {
        self.decompose(k).is_some()
    }

    /// Elements of `N` missing from the semigroup, all below the conductor.
    pub fn gaps(&self) -> Vec<u64> {
        (0..self.conductor).filter(|&k| !self.contains(k)).collect()
    }
}

impl fmt::Display for Semigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}>", self.n, self.m)
    }
}

/// The cuspidal sets, stored as parallel vectors sorted by `j`:
/// `p[i]` and `m_set[i]` belong to `j[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuspidalSets {
    pub p: Vec<Exponent>,
    pub j: Vec<u64>,
    pub m_set: Vec<Exponent>,
}

impl CuspidalSets {
    pub fn new(sg: &Semigroup) -> Self {
        let (n, m) = (sg.n, sg.m);
        let mut entries = Vec::new();
        for p1 in 0..m.saturating_sub(1) {
            for p2 in 0..n.saturating_sub(1) {
                let v = n as u64 * p1 as u64 + m as u64 * p2 as u64;
                if v > sg.nm() {
                    entries.push((v - sg.nm(), Exponent::new(p1, p2)));
                }
            }
        }
        entries.sort();
        CuspidalSets {
            j: entries.iter().map(|e| e.0).collect(),
            p: entries.iter().map(|e| e.1).collect(),
            m_set: entries
                .iter()
                .map(|&(_, p)| Exponent::new(m - p.a - 1, n - p.b - 1))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.j.len()
    }

    pub fn is_empty(&self) -> bool {
        self.j.is_empty()
    }

    pub fn contains_j(&self, j: u64) -> bool {
        self.j.binary_search(&j).is_ok()
    }

    pub fn contains_m(&self, e: Exponent) -> bool {
        self.m_set.contains(&e)
    }

    /// `(p_{1,j}, p_{2,j})`.
    pub fn p_of(&self, j: u64) -> Option<Exponent> {
        self.j.binary_search(&j).ok().map(|i| self.p[i])
    }

    pub fn j_to_p(&self) -> BTreeMap<u64, Exponent> {
        self.j.iter().copied().zip(self.p.iter().copied()).collect()
    }
}

/// `{l : l + n and l + m are gaps}`, computed from the semigroup alone.
pub fn j_by_gaps(sg: &Semigroup) -> Vec<u64> {
    (1..sg.conductor())
        .filter(|&l| !sg.contains(l + sg.n as u64) && !sg.contains(l + sg.m as u64))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Form {
    Adapted,
    Nice,
}

/// An implicit equation of a cusp.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveEquation {
    sg: Semigroup,
    f: TruncatedPoly,
    form: Form,
    coeffs: BTreeMap<u64, Rational>,
    mu: Rational,
    source: Vec<(Rational, Exponent)>,
}

impl CurveEquation {
    /// `x^m + y^n + sum z_j x^{p_{1,j}} y^{p_{2,j}}`; zero coefficients are dropped.
    pub fn nice<I>(sg: Semigroup, coeffs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, Rational)>,
    {
        Self::nice_with_horizon(sg, coeffs, sg.order().default_horizon())
    }

    pub fn nice_with_horizon<I>(sg: Semigroup, coeffs: I, horizon: u64) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, Rational)>,
    {
        let cs = CuspidalSets::new(&sg);
        let mut map = BTreeMap::new();
        for (j, z) in coeffs {
            cs.p_of(j).ok_or(Error::NotInJ(j))?;
            if z.is_zero() {
                map.remove(&j);
            } else {
                map.insert(j, z);
            }
        }
        let mut source = vec![
            (Rational::one(), Exponent::new(sg.m, 0)),
            (Rational::one(), Exponent::new(0, sg.n)),
        ];
        source.extend(map.iter().map(|(j, z)| (z.clone(), cs.p_of(*j).unwrap())));
        let f = TruncatedPoly::from_terms(sg.order(), horizon, source.iter().cloned());
        Ok(CurveEquation {
            sg,
            f,
            form: Form::Nice,
            coeffs: map,
            mu: Rational::one(),
            source,
        })
    }

    /// An equation `mu x^m + c y^n + (terms of weighted degree > nm)`,
    /// normalized so the `y^n` coefficient is one.
    pub fn adapted<I>(sg: Semigroup, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Rational, Exponent)>,
    {
        Self::adapted_with_horizon(sg, terms, sg.order().default_horizon())
    }

    pub fn adapted_with_horizon<I>(sg: Semigroup, terms: I, horizon: u64) -> Result<Self>
    where
        I: IntoIterator<Item = (Rational, Exponent)>,
    {
        let order = sg.order();
        let mut acc: BTreeMap<Exponent, Rational> = BTreeMap::new();
        for (c, e) in terms {
            *acc.entry(e).or_insert_with(Rational::zero) += c;
        }
        acc.retain(|_, c| !c.is_zero());
        let yn = Exponent::new(0, sg.n);
        let xm = Exponent::new(sg.m, 0);
        let cy = acc
            .get(&yn)
            .cloned()
            .ok_or_else(|| Error::NotAdapted(format!("no y^{} term", sg.n)))?;
        let mu = acc
            .get(&xm)
            .map(|c| c / &cy)
            .ok_or_else(|| Error::NotAdapted(format!("no x^{} term", sg.m)))?;
        for e in acc.keys() {
            if *e != yn && *e != xm && order.degree(*e) <= sg.nm() {
                return Err(Error::NotAdapted(format!(
                    "term x^{}*y^{} has weighted degree {} <= {}",
                    e.a,
                    e.b,
                    order.degree(*e),
                    sg.nm()
                )));
            }
        }
        let source: Vec<(Rational, Exponent)> =
            acc.into_iter().map(|(e, c)| (c / &cy, e)).collect();
        let f = TruncatedPoly::from_terms(order, horizon, source.iter().cloned());
        Ok(CurveEquation {
            sg,
            f,
            form: Form::Adapted,
            coeffs: BTreeMap::new(),
            mu,
            source,
        })
    }

    /// The same curve with a different truncation horizon.
    pub fn with_horizon(&self, horizon: u64) -> Self {
        let mut eq = self.clone();
        eq.f = TruncatedPoly::from_terms(self.sg.order(), horizon, self.source.iter().cloned());
        eq
    }

    pub fn semigroup(&self) -> &Semigroup {
        &self.sg
    }

    pub fn n(&self) -> u32 {
        self.sg.n
    }

    pub fn m(&self) -> u32 {
        self.sg.m
    }

    pub fn order(&self) -> WeightedOrder {
        self.f.order()
    }

    pub fn horizon(&self) -> u64 {
        self.f.horizon()
    }

    pub fn poly(&self) -> &TruncatedPoly {
        &self.f
    }

    pub fn form(&self) -> Form {
        self.form
    }

    pub fn mu(&self) -> &Rational {
        &self.mu
    }

    /// The nice-form coefficients `z_j` that are non-zero.
    pub fn coeffs(&self) -> &BTreeMap<u64, Rational> {
        &self.coeffs
    }

    pub fn z(&self, j: u64) -> Rational {
        self.coeffs.get(&j).cloned().unwrap_or_else(Rational::zero)
    }

    /// The exact (untruncated) terms of `f`.
    pub fn terms(&self) -> &[(Rational, Exponent)] {
        &self.source
    }

    pub fn cuspidal_sets(&self) -> CuspidalSets {
        CuspidalSets::new(&self.sg)
    }

    /// Parametrization horizon matching the implicit horizon: a differential
    /// value is visible to the parametrization exactly when the final
    /// reduction finishes below [`Self::horizon`].
    pub fn matching_t_horizon(&self) -> u64 {
        (self.horizon() + self.sg.n as u64 + self.sg.m as u64).saturating_sub(self.sg.nm())
    }
}

impl fmt::Display for CurveEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.f)
    }
}

/// `x(t) = s t^n`, `y(t) = sum_k y_k t^k` with `ord_t y = m`.
///
/// Over `Q` one can't always take `s = 1`: `y^n + mu x^m` forces
/// `y_m^n = -mu s^m`, which has no rational root for even `n`. Choosing
/// `s = ±mu^j` and `y_m = ±mu^i` with `in - jm = 1` keeps everything
/// rational; orders in `t` are unaffected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parametrization {
    n: u32,
    m: u32,
    s: Rational,
    t_horizon: u64,
    /// `powers[b]` is `y(t)^b` to `t_horizon + 1` coefficients.
    powers: Vec<Vec<Rational>>,
}

impl Parametrization {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn x_scale(&self) -> &Rational {
        &self.s
    }

    pub fn t_horizon(&self) -> u64 {
        self.t_horizon
    }

    /// Coefficients of `y(t)` for `t^0 .. t^{t_horizon - 1}`.
    pub fn y_series(&self) -> &[Rational] {
        &self.powers[1][..self.t_horizon as usize]
    }

    /// The coefficient of `t^m` in `y(t)`.
    pub fn leading_coeff(&self) -> &Rational {
        &self.powers[1][self.m as usize]
    }

    fn len(&self) -> usize {
        self.t_horizon as usize
    }

    fn power(&self, b: u32) -> Option<&[Rational]> {
        self.powers.get(b as usize).map(|v| v.as_slice())
    }

    /// Adds `c x^a y^b` evaluated along the branch.
    fn add_monomial(&self, acc: &mut [Rational], c: &Rational, e: Exponent) {
        let shift = self.n as usize * e.a as usize;
        let Some(yb) = self.power(e.b) else { return };
        if shift >= acc.len() {
            return;
        }
        let c = c * pow(&self.s, e.a);
        for (k, v) in yb.iter().enumerate().take(acc.len() - shift) {
            if !v.is_zero() {
                acc[k + shift] += &c * v;
            }
        }
    }

    /// Adds `c x^a y^b y'(t)`, using `y^b y' = (y^{b+1})' / (b+1)`.
    fn add_monomial_dy(&self, acc: &mut [Rational], c: &Rational, e: Exponent) {
        let shift = self.n as usize * e.a as usize;
        let Some(yb1) = self.power(e.b + 1) else { return };
        if shift >= acc.len() {
            return;
        }
        let c = c * pow(&self.s, e.a) / int(e.b as i64 + 1);
        for k in 0..(acc.len() - shift) {
            let v = &yb1[k + 1];
            if !v.is_zero() {
                acc[k + shift] += &c * v * int(k as i64 + 1);
            }
        }
    }

    /// `h(x(t), y(t))` modulo `t^{t_horizon}`.
    pub fn pullback(&self, h: &TruncatedPoly) -> Vec<Rational> {
        let mut acc = vec![Rational::zero(); self.len()];
        for (e, c) in h.iter() {
            self.add_monomial(&mut acc, c, e);
        }
        acc
    }

    /// `ord_t h(x(t), y(t))`.
    pub fn pullback_value(&self, h: &TruncatedPoly) -> Valuation {
        series_order(&self.pullback(h))
    }

    /// The `dt` coefficient of the pullback of `A dx + B dy`, modulo
    /// `t^{t_horizon}`.
    pub fn pullback_form(&self, a: &TruncatedPoly, b: &TruncatedPoly) -> Vec<Rational> {
        let mut acc = vec![Rational::zero(); self.len()];
        let n = int(self.n as i64);
        for (e, c) in a.iter() {
            // x^a y^b dx = n s^{a+1} t^{n(a+1)-1} y^b dt
            let shift = self.n as usize * (e.a as usize + 1) - 1;
            if shift >= acc.len() {
                continue;
            }
            let Some(yb) = self.power(e.b) else { continue };
            let c = c * &n * pow(&self.s, e.a + 1);
            let len = acc.len() - shift;
            for (k, v) in yb.iter().enumerate().take(len) {
                if !v.is_zero() {
                    acc[k + shift] += &c * v;
                }
            }
        }
        for (e, c) in b.iter() {
            self.add_monomial_dy(&mut acc, c, e);
        }
        acc
    }
}

/// Index of the first non-zero coefficient.
pub fn series_order(s: &[Rational]) -> Valuation {
    s.iter()
        .position(|c| !c.is_zero())
        .map_or(Valuation::InfiniteToHorizon, |k| Valuation::Finite(k as u64))
}

fn pow(c: &Rational, k: u32) -> Rational {
    num_traits::pow(c.clone(), k as usize)
}

/// `(i, j)` with `i n - j m = 1`, `0 < i < m`.
fn bezout(n: u32, m: u32) -> (u32, u32) {
    let i = (1..m)
        .find(|i| (*i as u64 * n as u64) % m as u64 == 1)
        .expect("n and m are coprime");
    (i, ((i as u64 * n as u64 - 1) / m as u64) as u32)
}

/// Solves `f(s t^n, y(t)) = 0` for `y(t)` coefficient by coefficient.
///
/// Writing `y = t^m u(t)`, the coefficient of `t^{nm + d}` involves `u_d`
/// only through `y^n`, linearly with factor `n u_0^{n-1}`; everything else
/// is already known. Powers `u^b` follow from the usual power-series power
/// recurrence.
pub fn newton_puiseux(eq: &CurveEquation, t_horizon: u64) -> Result<Parametrization> {
    let (n, m) = (eq.n(), eq.m());
    let nm = eq.semigroup().nm();
    let mu = eq.mu().clone();
    if mu.is_zero() {
        return Err(Error::NoSolution {
            degree: nm,
            reason: "coefficient of x^m vanishes".into(),
        });
    }
    let (i, j) = bezout(n, m);
    let (sigma_u, sigma_s) = if n % 2 == 1 { (-1, 1) } else { (1, -1) };
    let u0 = int(sigma_u) * pow(&mu, i);
    let s = int(sigma_s) * pow(&mu, j);

    let order = eq.order();
    let yn = Exponent::new(0, n);
    // (coefficient * s^a, b, excess degree e = na + mb - nm)
    let mut rest: Vec<(Rational, u32, usize)> = Vec::new();
    let mut check = Rational::zero();
    for (c, e) in eq.terms() {
        if *e == yn {
            continue;
        }
        let deg = order.degree(*e);
        let cs = c * pow(&s, e.a);
        if deg < nm {
            return Err(Error::NoSolution {
                degree: deg,
                reason: format!("term x^{}*y^{} below the leading form", e.a, e.b),
            });
        }
        if deg == nm {
            check += &cs * pow(&u0, e.b);
        }
        rest.push((cs, e.b, (deg - nm) as usize));
    }
    check += pow(&u0, n);
    if !check.is_zero() {
        return Err(Error::NoSolution {
            degree: nm,
            reason: "leading form does not vanish".into(),
        });
    }

    // Internal length: one extra coefficient for derivatives.
    let total = t_horizon as usize + 1;
    let len_u = total.saturating_sub(m as usize).max(1);
    let mut bs: Vec<u32> = rest.iter().map(|r| r.1).chain([n]).collect();
    bs.sort();
    bs.dedup();
    let bmax = *bs.last().unwrap() as usize;
    let mut u = vec![Rational::zero(); len_u];
    u[0] = u0.clone();
    // big[b][d] = coefficient of t^d in u^b, for b in bs.
    let mut big: Vec<Vec<Rational>> = vec![Vec::new(); bmax + 1];
    for &b in &bs {
        let mut v = vec![Rational::zero(); len_u];
        v[0] = pow(&u0, b);
        big[b as usize] = v;
    }
    let denom = int(n as i64) * pow(&u0, n - 1);
    for d in 1..len_u {
        let mut partial: Vec<Rational> = vec![Rational::zero(); bmax + 1];
        let du0 = int(d as i64) * &u0;
        for &b in &bs {
            if b == 0 {
                continue;
            }
            let ub = &big[b as usize];
            let mut acc = Rational::zero();
            for (k, uk) in u.iter().enumerate().take(d).skip(1) {
                if uk.is_zero() || ub[d - k].is_zero() {
                    continue;
                }
                let w = (b as i64 + 1) * k as i64 - d as i64;
                acc += uk * &ub[d - k] * int(w);
            }
            partial[b as usize] = acc / &du0;
        }
        let mut c = partial[n as usize].clone();
        for (cs, b, e) in &rest {
            if *e == 0 || *e > d {
                continue;
            }
            let ub = &big[*b as usize];
            if *b == 0 {
                if *e == d {
                    c += cs;
                }
            } else if !ub[d - e].is_zero() {
                c += cs * &ub[d - e];
            }
        }
        let ud = -c / &denom;
        for &b in &bs {
            if b == 0 {
                continue;
            }
            let v = &partial[b as usize] + int(b as i64) * pow(&u0, b - 1) * &ud;
            big[b as usize][d] = v;
        }
        u[d] = ud;
    }

    let mut y = vec![Rational::zero(); total];
    for (k, c) in u.iter().enumerate() {
        if m as usize + k < total {
            y[m as usize + k] = c.clone();
        }
    }
    let mut powers = vec![one_series(total), y.clone()];
    for b in 2.. {
        let lo = m as usize * b;
        if lo >= total {
            break;
        }
        let prev = &powers[b - 1];
        let mut next = vec![Rational::zero(); total];
        for (k, slot) in next.iter_mut().enumerate().skip(lo) {
            let mut acc = Rational::zero();
            for i in m as usize..=(k - m as usize * (b - 1)) {
                let (yi, pk) = (&y[i], &prev[k - i]);
                if !yi.is_zero() && !pk.is_zero() {
                    acc += yi * pk;
                }
            }
            *slot = acc;
        }
        powers.push(next);
    }
    Ok(Parametrization {
        n,
        m,
        s,
        t_horizon,
        powers,
    })
}

fn one_series(len: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); len];
    v[0] = Rational::one();
    v
}

/// Parametrization with the horizon matched to the equation's.
pub fn default_parametrization(eq: &CurveEquation) -> Result<Parametrization> {
    newton_puiseux(eq, eq.matching_t_horizon())
}

/// `f(x(t), y(t))` modulo `t^{t_horizon}`; zero for a valid parametrization.
pub fn residual(eq: &CurveEquation, param: &Parametrization) -> Vec<Rational> {
    let mut acc = vec![Rational::zero(); param.len()];
    for (c, e) in eq.terms() {
        param.add_monomial(&mut acc, c, *e);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn sg(n: u32, m: u32) -> Semigroup {
        Semigroup::new(n, m).unwrap()
    }

    #[test]
    fn gaps_examples() {
        assert_eq!(sg(2, 3).gaps(), vec![1]);
        assert_eq!(sg(4, 5).gaps(), vec![1, 2, 3, 6, 7, 11]);
        assert_eq!(sg(4, 5).conductor(), 12);
        assert_eq!(
            sg(4, 9).gaps(),
            vec![1, 2, 3, 5, 6, 7, 10, 11, 14, 15, 19, 23]
        );
        assert!(Semigroup::new(4, 8).is_err());
    }

    #[test]
    fn cuspidal_examples() {
        assert!(CuspidalSets::new(&sg(2, 7)).is_empty());
        let c = CuspidalSets::new(&sg(4, 5));
        assert_eq!(c.j, vec![2]);
        assert_eq!(c.p, vec![Exponent::new(3, 2)]);
        assert_eq!(c.m_set, vec![Exponent::new(1, 1)]);
        let c = CuspidalSets::new(&sg(4, 9));
        assert_eq!(c.j, vec![1, 2, 6, 10]);
        let mut p = c.p.clone();
        p.sort();
        assert_eq!(
            p,
            vec![
                Exponent::new(5, 2),
                Exponent::new(6, 2),
                Exponent::new(7, 1),
                Exponent::new(7, 2)
            ]
        );
        assert_eq!(j_by_gaps(&sg(4, 9)), c.j);
    }

    #[test]
    fn nice_rejects_outside_j() {
        assert_eq!(
            CurveEquation::nice(sg(4, 5), [(3, int(1))]),
            Err(Error::NotInJ(3))
        );
    }

    #[test]
    fn adapted_checks_shape() {
        let e = Exponent::new;
        assert!(CurveEquation::adapted(sg(4, 5), [(int(1), e(5, 0)), (int(1), e(0, 4))]).is_ok());
        assert!(matches!(
            CurveEquation::adapted(sg(4, 5), [(int(1), e(5, 0)), (int(1), e(0, 4)), (int(1), e(1, 2))]),
            Err(Error::NotAdapted(_))
        ));
        let eq =
            CurveEquation::adapted(sg(3, 4), [(int(2), e(4, 0)), (int(2), e(0, 3))]).unwrap();
        assert_eq!(eq.mu(), &int(1));
    }

    #[test]
    fn binomial_parametrization() {
        let eq = CurveEquation::nice(sg(4, 5), []).unwrap();
        let p = newton_puiseux(&eq, 40).unwrap();
        let y = p.y_series();
        assert!(y.iter().enumerate().all(|(k, c)| (k == 5) != c.is_zero()));
        // y_5^4 = -s^5 with s = -1.
        assert_eq!(p.x_scale(), &int(-1));
        assert_eq!(pow(p.leading_coeff(), 4), int(1));
        assert!(residual(&eq, &p).iter().all(Zero::is_zero));
    }

    #[test]
    fn parametrization_with_perturbation() {
        let eq = CurveEquation::nice(sg(4, 5), [(2, int(1))]).unwrap();
        let p = newton_puiseux(&eq, 40).unwrap();
        assert!(residual(&eq, &p).iter().all(Zero::is_zero));
        let y = p.y_series();
        assert!(y[..5].iter().all(Zero::is_zero));
        // x^3 y^2 exceeds the leading weight 20 by 2, so u_2 is the first
        // correction.
        assert!(y[6].is_zero());
        assert!(!y[7].is_zero());
    }

    #[test]
    fn odd_n_and_general_mu() {
        let e = Exponent::new;
        let eq = CurveEquation::adapted(
            sg(3, 7),
            [(rat(5, 2), e(7, 0)), (int(1), e(0, 3)), (int(-3), e(5, 1)), (int(1), e(8, 0))],
        )
        .unwrap();
        let p = newton_puiseux(&eq, 60).unwrap();
        assert!(residual(&eq, &p).iter().all(Zero::is_zero));
    }

    #[test]
    fn pullback_values() {
        let eq = CurveEquation::nice(sg(4, 5), [(2, int(1))]).unwrap();
        let p = default_parametrization(&eq).unwrap();
        let o = eq.order();
        let h = eq.horizon();
        assert_eq!(p.pullback_value(&TruncatedPoly::x(o, h)), Valuation::Finite(4));
        assert_eq!(p.pullback_value(&TruncatedPoly::y(o, h)), Valuation::Finite(5));
        assert_eq!(p.pullback_value(eq.poly()), Valuation::InfiniteToHorizon);
    }
}
