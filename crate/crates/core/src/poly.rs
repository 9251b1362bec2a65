//! Exact rational coefficients, monomial exponents, the weighted monomial
//! order and bivariate polynomials truncated at a weighted-degree horizon.
//!
//! A [`TruncatedPoly`] stores its terms keyed by `(weighted degree, x-power)`,
//! so iteration runs in increasing weighted order and the leading term is the
//! first entry. Every product discards terms whose weighted degree exceeds the
//! horizon; since all operations only ever raise degrees, everything at or
//! below the horizon is exact.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `p / q` as an exact rational.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// The power `x^a y^b`, written `(a, b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exponent {
    pub a: u32,
    pub b: u32,
}

impl Exponent {
    pub const ZERO: Exponent = Exponent { a: 0, b: 0 };

    pub const fn new(a: u32, b: u32) -> Self {
        Exponent { a, b }
    }

    /// `self` divides `other` when `other - self` has no negative entry.
    pub fn divides(self, other: Exponent) -> bool {
        self.a <= other.a && self.b <= other.b
    }

    pub fn checked_sub(self, other: Exponent) -> Option<Exponent> {
        Some(Exponent::new(
            self.a.checked_sub(other.a)?,
            self.b.checked_sub(other.b)?,
        ))
    }

    pub fn lcm(self, other: Exponent) -> Exponent {
        Exponent::new(self.a.max(other.a), self.b.max(other.b))
    }
}

impl Add for Exponent {
    type Output = Exponent;
    fn add(self, rhs: Exponent) -> Exponent {
        Exponent::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// Weighted order with weights `(n, m)`: compare `n*a + m*b`, then the
/// x-power.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WeightedOrder {
    n: u32,
    m: u32,
}

impl WeightedOrder {
    pub fn new(n: u32, m: u32) -> Result<Self> {
        if n < 2 || m <= n || n.gcd(&m) != 1 {
            return Err(Error::InvalidPair { n, m });
        }
        Ok(WeightedOrder { n, m })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn degree(&self, e: Exponent) -> u64 {
        self.n as u64 * e.a as u64 + self.m as u64 * e.b as u64
    }

    pub fn compare(&self, e1: Exponent, e2: Exponent) -> Ordering {
        self.degree(e1)
            .cmp(&self.degree(e2))
            .then(e1.a.cmp(&e2.a))
    }

    /// The default truncation horizon `4nm`.
    pub fn default_horizon(&self) -> u64 {
        4 * self.n as u64 * self.m as u64
    }

    fn key(&self, e: Exponent) -> Key {
        Key {
            degree: self.degree(e),
            a: e.a,
        }
    }

    fn exponent(&self, k: Key) -> Exponent {
        let b = (k.degree - self.n as u64 * k.a as u64) / self.m as u64;
        Exponent::new(k.a, b as u32)
    }

    fn check_same(&self, other: &WeightedOrder) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::OrderMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }
}

impl fmt::Display for WeightedOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "weights ({}, {})", self.n, self.m)
    }
}

/// Compare two exponents under the weighted order `w`.
pub fn weighted_compare(e1: Exponent, e2: Exponent, w: WeightedOrder) -> Ordering {
    w.compare(e1, e2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Key {
    degree: u64,
    a: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: Rational,
    pub exp: Exponent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedPoly {
    order: WeightedOrder,
    horizon: u64,
    terms: BTreeMap<Key, Rational>,
}

impl TruncatedPoly {
    pub fn zero(order: WeightedOrder, horizon: u64) -> Self {
        TruncatedPoly {
            order,
            horizon,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(order: WeightedOrder, horizon: u64, c: Rational) -> Self {
        Self::monomial(order, horizon, c, Exponent::ZERO)
    }

    pub fn one(order: WeightedOrder, horizon: u64) -> Self {
        Self::constant(order, horizon, Rational::one())
    }

    pub fn monomial(order: WeightedOrder, horizon: u64, c: Rational, exp: Exponent) -> Self {
        let mut p = Self::zero(order, horizon);
        p.add_term(c, exp);
        p
    }

    pub fn x(order: WeightedOrder, horizon: u64) -> Self {
        Self::monomial(order, horizon, Rational::one(), Exponent::new(1, 0))
    }

    pub fn y(order: WeightedOrder, horizon: u64) -> Self {
        Self::monomial(order, horizon, Rational::one(), Exponent::new(0, 1))
    }

    /// Sums the given terms; duplicates combine, zeros and terms beyond the
    /// horizon are dropped.
    pub fn from_terms<I>(order: WeightedOrder, horizon: u64, terms: I) -> Self
    where
        I: IntoIterator<Item = (Rational, Exponent)>,
    {
        let mut p = Self::zero(order, horizon);
        for (c, e) in terms {
            p.add_term(c, e);
        }
        p
    }

    pub fn order(&self) -> WeightedOrder {
        self.order
    }

    pub fn horizon(&self) -> u64 {
        self.horizon
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing weighted order.
    pub fn iter(&self) -> impl Iterator<Item = (Exponent, &Rational)> + '_ {
        self.terms.iter().map(|(k, c)| (self.order.exponent(*k), c))
    }

    pub fn terms(&self) -> Vec<Term> {
        self.iter()
            .map(|(exp, c)| Term {
                coeff: c.clone(),
                exp,
            })
            .collect()
    }

    pub fn coeff(&self, exp: Exponent) -> Rational {
        self.terms
            .get(&self.order.key(exp))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<Term> {
        self.terms.iter().next().map(|(k, c)| Term {
            coeff: c.clone(),
            exp: self.order.exponent(*k),
        })
    }

    pub fn leading_power(&self) -> Option<Exponent> {
        self.terms.keys().next().map(|k| self.order.exponent(*k))
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.values().next()
    }

    /// Weighted degree of the leading power.
    pub fn order_degree(&self) -> Option<u64> {
        self.terms.keys().next().map(|k| k.degree)
    }

    /// Adds `c * x^a y^b` in place.
    pub fn add_term(&mut self, c: Rational, exp: Exponent) {
        let key = self.order.key(exp);
        if key.degree > self.horizon || c.is_zero() {
            return;
        }
        self.add_at(key, c);
    }

    fn add_at(&mut self, key: Key, c: Rational) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c * x^shift * other`, truncating to the smaller horizon.
    pub fn add_scaled_shift(&mut self, c: &Rational, shift: Exponent, other: &TruncatedPoly) {
        assert_eq!(self.order, other.order, "weighted orders differ");
        self.horizon = self.horizon.min(other.horizon);
        if c.is_zero() {
            return;
        }
        self.drop_above_horizon();
        let d = self.order.degree(shift);
        for (k, v) in &other.terms {
            let degree = k.degree + d;
            if degree > self.horizon {
                break;
            }
            let key = Key {
                degree,
                a: k.a + shift.a,
            };
            self.add_at(key, c * v);
        }
    }

    fn drop_above_horizon(&mut self) {
        let cut = Key {
            degree: self.horizon + 1,
            a: 0,
        };
        let _ = self.terms.split_off(&cut);
    }

    /// Lowers the horizon to `horizon` (never raises it).
    pub fn truncate(&self, horizon: u64) -> Self {
        let mut p = self.clone();
        p.horizon = p.horizon.min(horizon);
        p.drop_above_horizon();
        p
    }

    pub fn checked_add(&self, other: &TruncatedPoly) -> Result<Self> {
        self.order.check_same(&other.order)?;
        let mut p = self.truncate(other.horizon);
        p.add_scaled_shift(&Rational::one(), Exponent::ZERO, other);
        Ok(p)
    }

    pub fn checked_sub(&self, other: &TruncatedPoly) -> Result<Self> {
        self.order.check_same(&other.order)?;
        let mut p = self.truncate(other.horizon);
        p.add_scaled_shift(&-Rational::one(), Exponent::ZERO, other);
        Ok(p)
    }

    pub fn checked_mul(&self, other: &TruncatedPoly) -> Result<Self> {
        self.order.check_same(&other.order)?;
        let horizon = self.horizon.min(other.horizon);
        let mut p = TruncatedPoly::zero(self.order, horizon);
        for (k, c) in &self.terms {
            if k.degree > horizon {
                break;
            }
            p.add_scaled_shift(c, self.order.exponent(*k), other);
        }
        Ok(p)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return TruncatedPoly::zero(self.order, self.horizon);
        }
        TruncatedPoly {
            order: self.order,
            horizon: self.horizon,
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// `c * x^exp * self`.
    pub fn mul_monomial(&self, c: &Rational, exp: Exponent) -> Self {
        let mut p = TruncatedPoly::zero(self.order, self.horizon);
        p.add_scaled_shift(c, exp, self);
        p
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = TruncatedPoly::one(self.order, self.horizon);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn partial_derivative(&self, var: Var) -> Self {
        let mut p = TruncatedPoly::zero(self.order, self.horizon);
        for (e, c) in self.iter() {
            match var {
                Var::X if e.a > 0 => p.add_term(c * int(e.a as i64), Exponent::new(e.a - 1, e.b)),
                Var::Y if e.b > 0 => p.add_term(c * int(e.b as i64), Exponent::new(e.a, e.b - 1)),
                _ => {}
            }
        }
        p
    }

    /// Largest absolute numerator/denominator bit length, a rough size gauge.
    pub fn max_bits(&self) -> u64 {
        self.terms
            .values()
            .map(|c| c.numer().bits().max(c.denom().bits()))
            .max()
            .unwrap_or(0)
    }
}

impl Add for &TruncatedPoly {
    type Output = TruncatedPoly;
    fn add(self, rhs: &TruncatedPoly) -> TruncatedPoly {
        self.checked_add(rhs).expect("weighted orders differ")
    }
}

impl Sub for &TruncatedPoly {
    type Output = TruncatedPoly;
    fn sub(self, rhs: &TruncatedPoly) -> TruncatedPoly {
        self.checked_sub(rhs).expect("weighted orders differ")
    }
}

impl Mul for &TruncatedPoly {
    type Output = TruncatedPoly;
    fn mul(self, rhs: &TruncatedPoly) -> TruncatedPoly {
        self.checked_mul(rhs).expect("weighted orders differ")
    }
}

impl Neg for &TruncatedPoly {
    type Output = TruncatedPoly;
    fn neg(self) -> TruncatedPoly {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for TruncatedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.iter().enumerate() {
            let (sign, abs) = if c.is_negative() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if i == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mono = monomial_string(e);
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

fn monomial_string(e: Exponent) -> String {
    let part = |v: &str, k: u32| match k {
        0 => String::new(),
        1 => v.to_string(),
        k => format!("{v}^{k}"),
    };
    let (x, y) = (part("x", e.a), part("y", e.b));
    match (x.is_empty(), y.is_empty()) {
        (true, _) => y,
        (false, true) => x,
        (false, false) => format!("{x}*{y}"),
    }
}
