//! Curve specification files.
//!
//! ```text
//! # x^9 + y^4 + x^7 y
//! n = 4
//! m = 9
//! z 1 = 1
//! ```
//!
//! `z j = c` sets a coefficient of the nice form. `term c a b` adds
//! `c x^a y^b` to `mu x^m + y^n` instead, giving an adapted equation; the two
//! styles cannot be mixed. Options: `horizon_mult`, `t_horizon`,
//! `precision`, `seed`.

use std::collections::BTreeMap;
use std::str::FromStr;

use cusp_core::{CurveEquation, CuspidalSets, Exponent, Rational, Semigroup};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: invalid pair ({n}, {m}): need gcd(n, m) = 1 and 2 <= n < m")]
    InvalidPair { line: usize, n: u32, m: u32 },
    #[error("line {line}: coefficient index {j} is outside J = {allowed:?}")]
    CoefficientOutsideJ { line: usize, j: u64, allowed: Vec<u64> },
    #[error("line {line}: {msg}")]
    Curve { line: usize, msg: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coefficients {
    Nice(Vec<(u64, Rational)>),
    Terms { mu: Rational, terms: Vec<(Rational, Exponent)> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveSpec {
    pub n: u32,
    pub m: u32,
    pub coeffs: Coefficients,
    pub horizon_mult: Option<u64>,
    pub t_horizon: Option<u64>,
    pub precision: Option<u32>,
    pub seed: Option<u64>,
}

impl CurveSpec {
    pub fn semigroup(&self) -> Semigroup {
        Semigroup::new(self.n, self.m).expect("validated when parsed")
    }

    /// The equation at horizon `horizon_mult * nm`.
    pub fn equation(&self, horizon_mult: u64) -> cusp_core::Result<CurveEquation> {
        let sg = self.semigroup();
        let h = horizon_mult.max(2) * sg.nm();
        match &self.coeffs {
            Coefficients::Nice(z) => CurveEquation::nice_with_horizon(sg, z.iter().cloned(), h),
            Coefficients::Terms { mu, terms } => {
                let mut all = vec![
                    (mu.clone(), Exponent::new(self.m, 0)),
                    (Rational::from_integer(1.into()), Exponent::new(0, self.n)),
                ];
                all.extend(terms.iter().cloned());
                CurveEquation::adapted_with_horizon(sg, all, h)
            }
        }
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> SpecError {
    SpecError::Parse { line, msg: msg.into() }
}

fn number<T: FromStr>(line: usize, what: &str, s: &str) -> Result<T, SpecError> {
    s.trim()
        .parse()
        .map_err(|_| parse_err(line, format!("cannot read {what} from {:?}", s.trim())))
}

fn rational(line: usize, s: &str) -> Result<Rational, SpecError> {
    let r: Rational = number(line, "a rational", s)?;
    Ok(r)
}

pub fn parse_spec(text: &str) -> Result<CurveSpec, SpecError> {
    let mut n: Option<(usize, u32)> = None;
    let mut m: Option<(usize, u32)> = None;
    let mut mu: Option<(usize, Rational)> = None;
    let mut z: BTreeMap<u64, (usize, Rational)> = BTreeMap::new();
    let mut terms: Vec<(usize, Rational, Exponent)> = Vec::new();
    let mut spec = CurveSpec {
        n: 0,
        m: 0,
        coeffs: Coefficients::Nice(Vec::new()),
        horizon_mult: None,
        t_horizon: None,
        precision: None,
        seed: None,
    };
    let mut last = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last = line;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if let Some(rest) = body.strip_prefix("term") {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            if parts.len() != 3 {
                return Err(parse_err(line, "expected `term <coeff> <a> <b>`"));
            }
            let c = rational(line, parts[0])?;
            let a = number(line, "an exponent", parts[1])?;
            let b = number(line, "an exponent", parts[2])?;
            terms.push((line, c, Exponent::new(a, b)));
            continue;
        }
        let Some((key, value)) = body.split_once('=') else {
            return Err(parse_err(line, format!("expected `key = value`, got {body:?}")));
        };
        let key = key.trim();
        if let Some(j) = key.strip_prefix('z') {
            let j: u64 = number(line, "a coefficient index", j)?;
            if z.insert(j, (line, rational(line, value)?)).is_some() {
                return Err(parse_err(line, format!("z {j} given twice")));
            }
            continue;
        }
        match key {
            "n" => n = Some((line, number(line, "n", value)?)),
            "m" => m = Some((line, number(line, "m", value)?)),
            "mu" => mu = Some((line, rational(line, value)?)),
            "horizon_mult" => spec.horizon_mult = Some(number(line, "horizon_mult", value)?),
            "t_horizon" => spec.t_horizon = Some(number(line, "t_horizon", value)?),
            "precision" => spec.precision = Some(number(line, "precision", value)?),
            "seed" => spec.seed = Some(number(line, "seed", value)?),
            other => return Err(parse_err(line, format!("unknown key {other:?}"))),
        }
    }
    let (n_line, n_val) = n.ok_or_else(|| parse_err(last, "missing `n = ...`"))?;
    let (m_line, m_val) = m.ok_or_else(|| parse_err(last, "missing `m = ...`"))?;
    let pair_line = n_line.max(m_line);
    let sg = Semigroup::new(n_val, m_val).map_err(|_| SpecError::InvalidPair {
        line: pair_line,
        n: n_val,
        m: m_val,
    })?;
    spec.n = n_val;
    spec.m = m_val;
    if !terms.is_empty() {
        if let Some((_, &(line, _))) = z.iter().next() {
            return Err(parse_err(line, "`z` coefficients cannot be mixed with `term` lines"));
        }
        let mu = mu.map(|(_, c)| c).unwrap_or_else(|| Rational::from_integer(1.into()));
        spec.coeffs = Coefficients::Terms {
            mu,
            terms: terms.into_iter().map(|(_, c, e)| (c, e)).collect(),
        };
    } else {
        if let Some((line, _)) = mu {
            return Err(parse_err(line, "`mu` only applies to `term` specifications"));
        }
        let cs = CuspidalSets::new(&sg);
        for (&j, &(line, _)) in &z {
            if !cs.contains_j(j) {
                return Err(SpecError::CoefficientOutsideJ {
                    line,
                    j,
                    allowed: cs.j.clone(),
                });
            }
        }
        spec.coeffs = Coefficients::Nice(z.into_iter().map(|(j, (_, c))| (j, c)).collect());
    }
    // Surface adapted-form violations here rather than at run time.
    if let Err(e) = spec.equation(spec.horizon_mult.unwrap_or(4)) {
        return Err(SpecError::Curve {
            line: last,
            msg: e.to_string(),
        });
    }
    Ok(spec)
}
