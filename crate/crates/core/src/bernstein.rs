//! Candidate roots of the Bernstein–Sato polynomial of a cusp in nice
//! form, decided through the residues
//!
//! `Res_f(a,b)(β) ∝ Σ_δ (-1)^{Σδ} Γ((Σδ_ℓ p_{1,ℓ} + a)/m) Γ((Σδ_ℓ p_{2,ℓ} + b)/n) Π z_ℓ^{δ_ℓ}/δ_ℓ!`
//!
//! summed over `δ` with `Σ δ_ℓ ℓ = k = βnm - na - mb`. Residues are kept
//! exact as sums of `q Γ(r₁) Γ(r₂)` with both arguments shifted into
//! `(0, 1]`; a nonzero verdict always comes with an MPFR interval
//! enclosure of the sum that excludes zero.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rug::float::Round;
use rug::ops::{AddAssignRound, AssignRound};
use rug::Float;

use crate::curve::{CurveEquation, CuspidalSets, Form, Semigroup};
use crate::differentials::delorme;
use crate::error::{Error, Result};
use crate::poly::{int, Exponent, Rational};
use crate::semimodule::{alpha_epsilon, AbstractSemimodule};

/// `β_j = (j + n + m)/nm` and `α_j = β_j + 1` for `j ∈ J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootCandidate {
    pub j: u64,
    pub beta: Rational,
    pub alpha_val: Rational,
}

impl RootCandidate {
    pub fn new(sg: &Semigroup, j: u64) -> Self {
        let beta = Rational::new(
            BigInt::from(j + sg.n() as u64 + sg.m() as u64),
            BigInt::from(sg.nm()),
        );
        RootCandidate {
            j,
            alpha_val: &beta + Rational::one(),
            beta,
        }
    }
}

pub fn root_candidates(sg: &Semigroup) -> Vec<RootCandidate> {
    CuspidalSets::new(sg)
        .j
        .iter()
        .map(|&j| RootCandidate::new(sg, j))
        .collect()
}

/// `δ_ℓ` for `ℓ ∈ J`; only non-zero entries are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DeltaSequence {
    pub delta: BTreeMap<u64, u32>,
}

impl DeltaSequence {
    pub fn get(&self, l: u64) -> u32 {
        self.delta.get(&l).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u32 {
        self.delta.values().sum()
    }

    pub fn weight(&self) -> u64 {
        self.delta.iter().map(|(l, d)| l * *d as u64).sum()
    }
}

/// All `δ` with `Σ δ_ℓ ℓ = k`, by depth-first search over `J` from the top.
pub fn delta_sequences(j: &[u64], k: u64) -> Vec<DeltaSequence> {
    let mut parts: Vec<u64> = j.iter().copied().filter(|&l| l > 0).collect();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts.dedup();
    let mut out = Vec::new();
    let mut cur = BTreeMap::new();
    dfs(&parts, k, &mut cur, &mut out);
    out.sort();
    out
}

fn dfs(parts: &[u64], k: u64, cur: &mut BTreeMap<u64, u32>, out: &mut Vec<DeltaSequence>) {
    if k == 0 {
        out.push(DeltaSequence { delta: cur.clone() });
        return;
    }
    let Some((&l, rest)) = parts.split_first() else {
        return;
    };
    for d in (0..=k / l).rev() {
        if d > 0 {
            cur.insert(l, d as u32);
        } else {
            cur.remove(&l);
        }
        dfs(rest, k - d * l, cur, out);
    }
    cur.remove(&l);
}

/// `q Γ(r₁) Γ(r₂)` with arbitrary positive arguments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaTerm {
    pub coeff: Rational,
    pub r1: Rational,
    pub r2: Rational,
}

impl GammaTerm {
    /// The same value with both arguments in `(0, 1]`, using
    /// `Γ(ρ + 1) = ρ Γ(ρ)`.
    pub fn canonical(&self) -> GammaTerm {
        let mut coeff = self.coeff.clone();
        let mut shift = |r: &Rational| {
            assert!(r.is_positive(), "Gamma argument {r} is not positive");
            let mut r = r.clone();
            while r > Rational::one() {
                r -= Rational::one();
                coeff *= &r;
            }
            r
        };
        let r1 = shift(&self.r1);
        let r2 = shift(&self.r2);
        GammaTerm { coeff, r1, r2 }
    }
}

/// `Σ q Γ(r₁) Γ(r₂)` grouped by canonical arguments in `(0, 1]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GammaExpr {
    pub groups: BTreeMap<(Rational, Rational), Rational>,
}

impl GammaExpr {
    pub fn add(&mut self, t: &GammaTerm) {
        let c = t.canonical();
        let key = (c.r1, c.r2);
        let slot = self.groups.entry(key.clone()).or_insert_with(Rational::zero);
        *slot += c.coeff;
        if slot.is_zero() {
            self.groups.remove(&key);
        }
    }

    pub fn from_terms<'a>(terms: impl IntoIterator<Item = &'a GammaTerm>) -> Self {
        let mut e = GammaExpr::default();
        for t in terms {
            e.add(t);
        }
        e
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn terms(&self) -> Vec<GammaTerm> {
        self.groups
            .iter()
            .map(|((r1, r2), q)| GammaTerm {
                coeff: q.clone(),
                r1: r1.clone(),
                r2: r2.clone(),
            })
            .collect()
    }
}

impl fmt::Display for GammaExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.groups.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .groups
            .iter()
            .map(|((r1, r2), q)| format!("{q}*G({r1})*G({r2})"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Zero,
    Nonzero,
    /// At least two distinct Gamma products survive; nonzero if they are
    /// linearly independent over `Q`.
    NonzeroAssumingIndependence,
}

impl Verdict {
    pub fn is_zero(self) -> bool {
        self == Verdict::Zero
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Zero => "zero",
            Verdict::Nonzero => "nonzero",
            Verdict::NonzeroAssumingIndependence => "nonzero_assuming_independence",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn residue_is_zero(expr: &GammaExpr) -> Verdict {
    match expr.groups.len() {
        0 => Verdict::Zero,
        1 => Verdict::Nonzero,
        _ => Verdict::NonzeroAssumingIndependence,
    }
}

/// A residue with the raw terms it was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residue {
    pub ab: Exponent,
    pub beta: Rational,
    pub k: u64,
    pub sequences: Vec<DeltaSequence>,
    pub terms: Vec<GammaTerm>,
    pub expr: GammaExpr,
}

impl Residue {
    pub fn verdict(&self) -> Verdict {
        residue_is_zero(&self.expr)
    }
}

fn require_nice(eq: &CurveEquation) -> Result<()> {
    if eq.form() == Form::Nice {
        Ok(())
    } else {
        Err(Error::PreconditionViolation("equation is not in nice form".into()))
    }
}

/// `k = βnm - na - mb`, checked to be a non-negative integer.
fn residue_index(sg: &Semigroup, ab: Exponent, beta: &Rational) -> Result<u64> {
    let scaled = beta * int(sg.nm() as i64);
    if !scaled.is_integer() {
        return Err(Error::PreconditionViolation(format!(
            "beta = {beta} is not a multiple of 1/{}",
            sg.nm()
        )));
    }
    let k = scaled.to_integer() - BigInt::from(sg.n() as u64 * ab.a as u64 + sg.m() as u64 * ab.b as u64);
    let k: i64 = k.try_into().map_err(|_| Error::PreconditionViolation("k out of range".into()))?;
    u64::try_from(k).map_err(|_| Error::NegativeK(k))
}

/// The residue with all terms kept. Sequences using a vanishing `z_ℓ`
/// contribute nothing and are skipped.
pub fn residue_detailed(eq: &CurveEquation, ab: Exponent, beta: &Rational) -> Result<Residue> {
    require_nice(eq)?;
    let sg = *eq.semigroup();
    let cs = eq.cuspidal_sets();
    if !cs.contains_m(ab) {
        return Err(Error::NotInM { a: ab.a, b: ab.b });
    }
    let k = residue_index(&sg, ab, beta)?;
    let j = k + sg.n() as u64 * ab.a as u64 + sg.m() as u64 * ab.b as u64;
    let j = j.checked_sub(sg.n() as u64 + sg.m() as u64);
    if !j.is_some_and(|j| cs.contains_j(j)) {
        return Err(Error::PreconditionViolation(format!("{beta} is not some beta_j")));
    }
    let support: Vec<u64> = eq.coeffs().keys().copied().collect();
    let sequences = delta_sequences(&support, k);
    let (m, n) = (int(sg.m() as i64), int(sg.n() as i64));
    let terms: Vec<GammaTerm> = sequences
        .iter()
        .map(|d| {
            let mut s1 = ab.a as u64;
            let mut s2 = ab.b as u64;
            let mut coeff = if d.total() % 2 == 0 { int(1) } else { int(-1) };
            for (&l, &dl) in &d.delta {
                let p = cs.p_of(l).expect("support lies in J");
                s1 += dl as u64 * p.a as u64;
                s2 += dl as u64 * p.b as u64;
                coeff *= num_traits::pow(eq.z(l), dl as usize) / factorial(dl);
            }
            GammaTerm {
                coeff,
                r1: int(s1 as i64) / &m,
                r2: int(s2 as i64) / &n,
            }
        })
        .collect();
    let expr = GammaExpr::from_terms(&terms);
    Ok(Residue {
        ab,
        beta: beta.clone(),
        k,
        sequences,
        terms,
        expr,
    })
}

/// `Res_f(a,b)(β)` without the positive prefactor `Γ(β)^{-1}/nm`.
pub fn residue(eq: &CurveEquation, ab: Exponent, beta: &Rational) -> Result<GammaExpr> {
    residue_detailed(eq, ab, beta).map(|r| r.expr)
}

fn factorial(k: u32) -> Rational {
    (1..=k as i64).map(int).fold(Rational::one(), |a, b| a * b)
}

/// An interval enclosure `[lower, upper]` of a residue sum that excludes 0.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub bits: u32,
    pub lower: f64,
    pub upper: f64,
}

impl Certificate {
    pub fn midpoint(&self) -> f64 {
        (self.lower + self.upper) / 2.0
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

pub const DEFAULT_PRECISION: u32 = 256;
pub const MAX_PRECISION: u32 = 1024;

fn to_rug(q: &Rational) -> rug::Rational {
    let num: rug::Integer = q.numer().to_str_radix(16).parse::<BigHex>().unwrap().0;
    let den: rug::Integer = q.denom().to_str_radix(16).parse::<BigHex>().unwrap().0;
    rug::Rational::from((num, den))
}

struct BigHex(rug::Integer);

impl std::str::FromStr for BigHex {
    type Err = rug::integer::ParseIntegerError;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        rug::Integer::from_str_radix(s, 16).map(BigHex)
    }
}

/// Encloses `Γ(r)` for `r ∈ (0, 1]`, where Γ is decreasing.
fn gamma_enclosure(r: &Rational, prec: u32) -> (Float, Float) {
    let r = to_rug(r);
    let (mut lo, _) = Float::with_val_round(prec, &r, Round::Up);
    let (mut hi, _) = Float::with_val_round(prec, &r, Round::Down);
    lo.gamma_round(Round::Down);
    hi.gamma_round(Round::Up);
    (lo, hi)
}

/// Interval evaluation of `Σ q Γ(r₁) Γ(r₂)` at `prec` bits.
pub fn enclose(terms: &[GammaTerm], prec: u32) -> (Float, Float) {
    let mut lower = Float::with_val(prec, 0);
    let mut upper = Float::with_val(prec, 0);
    for t in terms.iter().map(GammaTerm::canonical) {
        let (a_lo, a_hi) = gamma_enclosure(&t.r1, prec);
        let (b_lo, b_hi) = gamma_enclosure(&t.r2, prec);
        let (g_lo, _) = Float::with_val_round(prec, &a_lo * &b_lo, Round::Down);
        let (g_hi, _) = Float::with_val_round(prec, &a_hi * &b_hi, Round::Up);
        let q = to_rug(&t.coeff);
        let (q_lo, _) = Float::with_val_round(prec, &q, Round::Down);
        let (q_hi, _) = Float::with_val_round(prec, &q, Round::Up);
        let mut t_lo = Float::new(prec);
        let mut t_hi = Float::new(prec);
        if t.coeff.is_negative() {
            t_lo.assign_round(&q_lo * &g_hi, Round::Down);
            t_hi.assign_round(&q_hi * &g_lo, Round::Up);
        } else {
            t_lo.assign_round(&q_lo * &g_lo, Round::Down);
            t_hi.assign_round(&q_hi * &g_hi, Round::Up);
        }
        lower.add_assign_round(&t_lo, Round::Down);
        upper.add_assign_round(&t_hi, Round::Up);
    }
    (lower, upper)
}

/// Certifies the sum is nonzero, doubling precision from `bits` up to
/// [`MAX_PRECISION`].
pub fn certify_nonzero(terms: &[GammaTerm], bits: u32) -> Result<Certificate> {
    let mut prec = bits.max(64);
    loop {
        let (lo, hi) = enclose(terms, prec);
        let excludes = lo.cmp0() == Some(Ordering::Greater) || hi.cmp0() == Some(Ordering::Less);
        if excludes {
            return Ok(Certificate {
                bits: prec,
                lower: lo.to_f64(),
                upper: hi.to_f64(),
            });
        }
        if prec >= MAX_PRECISION {
            return Err(Error::Uncertified { bits: prec });
        }
        prec = (prec * 2).min(MAX_PRECISION);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootKind {
    /// `-β_j` is a root.
    Beta,
    /// `-α_j` is a root.
    Alpha,
}

impl RootKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RootKind::Beta => "beta_root",
            RootKind::Alpha => "alpha_root",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootDecision {
    pub candidate: RootCandidate,
    pub kind: RootKind,
    /// `-β_j` or `-α_j`.
    pub root: Rational,
    pub witness: Option<Exponent>,
    pub verdict: Verdict,
    pub certificate: Option<Certificate>,
}

/// `M` in the order residues are tried: increasing `k`, then `(a, b)`.
fn m_by_k(cs: &CuspidalSets, sg: &Semigroup, beta_nm: u64) -> Vec<(u64, Exponent)> {
    let mut v: Vec<(u64, Exponent)> = cs
        .m_set
        .iter()
        .filter_map(|&e| {
            let w = sg.n() as u64 * e.a as u64 + sg.m() as u64 * e.b as u64;
            beta_nm.checked_sub(w).map(|k| (k, e))
        })
        .collect();
    v.sort();
    v
}

/// Whether `-β_j` or `-α_j` is a root: `-β_j` exactly when some residue at
/// `(a, b) ∈ M` is nonzero. The first such `(a, b)` in order of increasing
/// `k` is the witness.
pub fn decide_root(eq: &CurveEquation, j: u64, bits: u32) -> Result<RootDecision> {
    require_nice(eq)?;
    let sg = *eq.semigroup();
    let cs = eq.cuspidal_sets();
    if !cs.contains_j(j) {
        return Err(Error::NotInJ(j));
    }
    let cand = RootCandidate::new(&sg, j);
    for (_, ab) in m_by_k(&cs, &sg, j + sg.n() as u64 + sg.m() as u64) {
        let r = residue_detailed(eq, ab, &cand.beta)?;
        let verdict = r.verdict();
        if !verdict.is_zero() {
            let certificate = certify_nonzero(&r.terms, bits)?;
            return Ok(RootDecision {
                root: -cand.beta.clone(),
                candidate: cand,
                kind: RootKind::Beta,
                witness: Some(ab),
                verdict,
                certificate: Some(certificate),
            });
        }
    }
    Ok(RootDecision {
        root: -cand.alpha_val.clone(),
        candidate: cand,
        kind: RootKind::Alpha,
        witness: None,
        verdict: Verdict::Zero,
        certificate: None,
    })
}

/// Every `(a, b) ∈ M` with a nonzero residue at `β_j`.
pub fn all_witnesses(eq: &CurveEquation, j: u64) -> Result<Vec<(Exponent, Verdict)>> {
    let sg = *eq.semigroup();
    let cand = RootCandidate::new(&sg, j);
    let cs = eq.cuspidal_sets();
    let mut out = Vec::new();
    for (_, ab) in m_by_k(&cs, &sg, j + sg.n() as u64 + sg.m() as u64) {
        let v = residue_detailed(eq, ab, &cand.beta)?.verdict();
        if !v.is_zero() {
            out.push((ab, v));
        }
    }
    Ok(out)
}

/// `-λ/nm` for `λ ∈ Λ \ Γ` when `n <= 4`, otherwise for
/// `λ ∈ (λ₁ + Γ) \ Γ`; sorted by `λ`.
pub fn certified_roots_from_semimodule(sm: &AbstractSemimodule) -> Vec<Rational> {
    certified_lambdas(sm)
        .into_iter()
        .map(|l| -Rational::new(BigInt::from(l), BigInt::from(sm.semigroup().nm())))
        .collect()
}

/// The `λ` behind [`certified_roots_from_semimodule`].
pub fn certified_lambdas(sm: &AbstractSemimodule) -> Vec<u64> {
    let sg = sm.semigroup();
    if sg.n() <= 4 {
        return sm.elements_outside(0).expect("level 0 exists");
    }
    if sm.s() < 1 {
        return Vec::new();
    }
    first_translate_outside(sm)
}

/// `(λ₁ + Γ) \ Γ`.
pub fn first_translate_outside(sm: &AbstractSemimodule) -> Vec<u64> {
    if sm.s() < 1 {
        return Vec::new();
    }
    let sg = sm.semigroup();
    let l1 = sm.lambda(1);
    (l1..l1 + sg.conductor())
        .filter(|&k| sg.contains(k - l1) && !sg.contains(k))
        .collect()
}

/// One instance of the `(†)` statements: a value, the residue point and
/// the residue verdict there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DaggerCheck {
    pub lambda: u64,
    pub ab: Exponent,
    pub verdict: Verdict,
}

/// Consistency of the three characterizations of `λ₁` and of `(†)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZariskiReport {
    /// First `ℓ` with `z_ℓ ≠ 0`.
    pub j1: Option<u64>,
    /// `λ₁` from Delorme's algorithm.
    pub lambda1: Option<u64>,
    /// First `ℓ ∈ J` with `Res_f(1,1)((ℓ+n+m)/nm) ≠ 0`.
    pub j1_by_residue: Option<u64>,
    pub dagger: Vec<DaggerCheck>,
    pub consistent: bool,
}

pub fn zariski_condition_check(eq: &CurveEquation) -> Result<ZariskiReport> {
    require_nice(eq)?;
    let sg = *eq.semigroup();
    let (n, m) = (sg.n() as u64, sg.m() as u64);
    let cs = eq.cuspidal_sets();
    let j1 = eq.coeffs().keys().next().copied();
    let d = delorme(eq)?;
    let sm = d.semimodule().clone();
    let lambda1 = (sm.s() >= 1).then(|| sm.lambda(1));

    let mut j1_by_residue = None;
    for &l in &cs.j {
        let beta = RootCandidate::new(&sg, l).beta;
        if !residue(eq, Exponent::new(1, 1), &beta)?.is_empty() {
            j1_by_residue = Some(l);
            break;
        }
    }

    let mut dagger = Vec::new();
    if let Some(l1) = lambda1 {
        for lambda in first_translate_outside(&sm) {
            let e = sg.decompose(lambda - l1).expect("λ ∈ λ₁ + Γ");
            let ab = Exponent::new(e.a + 1, e.b + 1);
            let beta = Rational::new(BigInt::from(lambda), BigInt::from(sg.nm()));
            let verdict = residue(eq, ab, &beta).map(|e| residue_is_zero(&e))?;
            dagger.push(DaggerCheck { lambda, ab, verdict });
        }
    }
    let consistent = lambda1.map(|l| l - n - m) == j1
        && j1_by_residue == j1
        && dagger.iter().all(|c| !c.verdict.is_zero());
    Ok(ZariskiReport {
        j1,
        lambda1,
        j1_by_residue,
        dagger,
        consistent,
    })
}

/// Consistency of the second basis element for `n = 4` against the
/// coefficient conditions and the residue chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourReport {
    pub alpha: u32,
    pub epsilon: u32,
    pub q: u32,
    /// `2(4α+ε) z_{2ε+8q} - (3α+ε+q) z_{ε+4q}²`.
    pub quadratic: Rational,
    /// `q'` predicted by the coefficient conditions; `None` means no second
    /// element.
    pub q_prime_by_coefficients: Option<u32>,
    /// `q'` read off Delorme's `λ₂`.
    pub q_prime_by_delorme: Option<u32>,
    /// First `γ <= q` with `Res_f(α-q, 1)((8α+3ε+4γ)/nm) ≠ 0`.
    pub q_prime_by_residue: Option<u32>,
    pub residue_verdicts: Vec<Verdict>,
    pub dagger: Vec<DaggerCheck>,
    pub consistent: bool,
}

/// Requires `n = 4`, `α >= 2` and a Delorme `λ₁ = 4(α+1) + 2ε + 4q` with
/// `0 <= q <= α - 2`, the only shape that admits a second element.
pub fn four_condition_check(eq: &CurveEquation) -> Result<FourReport> {
    require_nice(eq)?;
    let sg = *eq.semigroup();
    if sg.n() != 4 {
        return Err(Error::PreconditionViolation(format!("n = {} is not 4", sg.n())));
    }
    let (alpha, epsilon) = alpha_epsilon(sg.m());
    if alpha < 2 {
        return Err(Error::PreconditionViolation("alpha < 2".into()));
    }
    let d = delorme(eq)?;
    let sm = d.semimodule();
    let (a, e) = (alpha as u64, epsilon as u64);
    let q = match (sm.s() >= 1).then(|| sm.lambda(1)) {
        Some(l1) if l1 >= 4 * (a + 1) + 2 * e && (l1 - 4 * (a + 1) - 2 * e) % 4 == 0 => {
            (l1 - 4 * (a + 1) - 2 * e) / 4
        }
        _ => {
            return Err(Error::PreconditionViolation(format!(
                "basis {} has no lambda_1 of the form 4(alpha+1)+2eps+4q",
                sm
            )))
        }
    };
    if q > a - 2 {
        return Err(Error::PreconditionViolation(format!("q = {q} > alpha - 2")));
    }
    let z = |l: u64| eq.z(l);
    let quadratic = int(2 * (4 * a + e) as i64) * z(2 * e + 8 * q)
        - int((3 * a + e + q) as i64) * z(e + 4 * q) * z(e + 4 * q);
    let q_prime_by_coefficients = (0..q)
        .find(|g| !z(2 * e + 4 * (q + g)).is_zero())
        .or_else(|| (!quadratic.is_zero()).then_some(q))
        .map(|g| g as u32);
    let q_prime_by_delorme = (sm.s() >= 2).then(|| ((sm.lambda(2) - 8 * a - 3 * e) / 4) as u32);

    let nm = sg.nm();
    let point = Exponent::new((a - q) as u32, 1);
    let mut residue_verdicts = Vec::new();
    for g in 0..=q {
        let beta = Rational::new(BigInt::from(8 * a + 3 * e + 4 * g), BigInt::from(nm));
        residue_verdicts.push(residue_is_zero(&residue(eq, point, &beta)?));
    }
    let q_prime_by_residue = residue_verdicts
        .iter()
        .position(|v| !v.is_zero())
        .map(|g| g as u32);

    let mut dagger = Vec::new();
    if let Some(qp) = q_prime_by_delorme {
        let l2 = sm.lambda(2);
        for extra in 1..=(q - qp as u64) {
            let lambda = l2 + 4 * extra;
            if sm.contains_level(lambda, 1) {
                continue;
            }
            let ab = Exponent::new((a - q + extra) as u32, 1);
            let beta = Rational::new(BigInt::from(lambda), BigInt::from(nm));
            let verdict = residue_is_zero(&residue(eq, ab, &beta)?);
            dagger.push(DaggerCheck { lambda, ab, verdict });
        }
    }
    let consistent = q_prime_by_coefficients == q_prime_by_delorme
        && q_prime_by_residue == q_prime_by_delorme
        && dagger.iter().all(|c| !c.verdict.is_zero());
    Ok(FourReport {
        alpha,
        epsilon,
        q: q as u32,
        quadratic,
        q_prime_by_coefficients,
        q_prime_by_delorme,
        q_prime_by_residue,
        residue_verdicts,
        dagger,
        consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn nice(n: u32, m: u32, z: &[(u64, Rational)]) -> CurveEquation {
        CurveEquation::nice(Semigroup::new(n, m).unwrap(), z.iter().cloned()).unwrap()
    }

    #[test]
    fn delta_examples() {
        let seq = |j: &[u64], k| -> Vec<Vec<(u64, u32)>> {
            delta_sequences(j, k)
                .into_iter()
                .map(|d| d.delta.into_iter().collect())
                .collect()
        };
        assert_eq!(seq(&[2], 2), vec![vec![(2, 1)]]);
        let mut s = seq(&[1, 2, 6, 10], 2);
        s.sort();
        assert_eq!(s, vec![vec![(1, 2)], vec![(2, 1)]]);
        assert_eq!(seq(&[1, 2, 6, 10], 0), vec![Vec::<(u64, u32)>::new()]);
    }

    #[test]
    fn canonical_shift() {
        let t = GammaTerm {
            coeff: int(1),
            r1: rat(11, 4),
            r2: rat(1, 2),
        };
        let c = t.canonical();
        assert_eq!(c.r1, rat(3, 4));
        assert_eq!(c.coeff, rat(7, 4) * rat(3, 4));
    }

    #[test]
    fn residue_single_term() {
        let eq = nice(4, 5, &[(2, int(3))]);
        let e = residue(&eq, Exponent::new(1, 1), &rat(11, 20)).unwrap();
        // -z_2 Γ(4/5) Γ(3/4)
        let mut want = GammaExpr::default();
        want.add(&GammaTerm {
            coeff: int(-3),
            r1: rat(4, 5),
            r2: rat(3, 4),
        });
        assert_eq!(e, want);
        let zero = nice(4, 5, &[]);
        assert!(residue(&zero, Exponent::new(1, 1), &rat(11, 20)).unwrap().is_empty());
    }

    #[test]
    fn residue_k_zero_never_vanishes() {
        let eq = nice(4, 5, &[]);
        // (1,1) at beta with k = 0 is only possible for j with j + 9 = 9,
        // which is not in J; use the raw term builder instead.
        let e = GammaExpr::from_terms(&[GammaTerm {
            coeff: int(1),
            r1: rat(1, 5),
            r2: rat(1, 4),
        }]);
        assert_eq!(residue_is_zero(&e), Verdict::Nonzero);
        assert!(matches!(
            residue(&eq, Exponent::new(1, 1), &rat(1, 20)),
            Err(Error::NegativeK(-8))
        ));
        assert!(matches!(
            residue(&eq, Exponent::new(2, 2), &rat(11, 20)),
            Err(Error::NotInM { a: 2, b: 2 })
        ));
    }

    #[test]
    fn residue_two_sequences_collapse_to_one_group() {
        // x^9 + y^4 + z_1 x^7 y + z_2 x^5 y^2, point (2, 1), beta = 19/36.
        let eq = nice(4, 9, &[(1, int(1)), (2, int(5))]);
        let r = residue_detailed(&eq, Exponent::new(2, 1), &rat(19, 36)).unwrap();
        assert_eq!(r.k, 2);
        assert_eq!(r.sequences.len(), 2);
        assert_eq!(r.expr.groups.len(), 1);
        let ((r1, r2), q) = r.expr.groups.iter().next().unwrap();
        assert_eq!((r1.clone(), r2.clone()), (rat(7, 9), rat(3, 4)));
        // q ∝ 7/18 z_1^2 - z_2
        assert_eq!(q, &(rat(7, 18) - int(5)));
    }

    #[test]
    fn enclosure_is_tight() {
        let terms = [
            GammaTerm { coeff: int(1), r1: rat(1, 3), r2: rat(1, 2) },
            GammaTerm { coeff: int(-2), r1: rat(2, 3), r2: rat(3, 4) },
        ];
        let c = certify_nonzero(&terms, DEFAULT_PRECISION).unwrap();
        assert!(c.width() < 1e-30 * c.midpoint().abs());
        let cancel = [
            GammaTerm { coeff: int(1), r1: rat(1, 3), r2: rat(1, 2) },
            GammaTerm { coeff: int(-1), r1: rat(1, 3), r2: rat(1, 2) },
        ];
        assert_eq!(
            certify_nonzero(&cancel, DEFAULT_PRECISION),
            Err(Error::Uncertified { bits: MAX_PRECISION })
        );
    }

    #[test]
    fn decide_root_examples() {
        let eq = nice(4, 5, &[(2, int(1))]);
        let d = decide_root(&eq, 2, DEFAULT_PRECISION).unwrap();
        assert_eq!(d.kind, RootKind::Beta);
        assert_eq!(d.witness, Some(Exponent::new(1, 1)));
        assert_eq!(d.root, rat(-11, 20));
        let d = decide_root(&nice(4, 5, &[]), 2, DEFAULT_PRECISION).unwrap();
        assert_eq!(d.kind, RootKind::Alpha);
        assert_eq!(d.root, rat(-31, 20));
        let eq = nice(4, 9, &[(1, int(1))]);
        let d = decide_root(&eq, 10, DEFAULT_PRECISION).unwrap();
        assert_eq!((d.kind, d.root), (RootKind::Beta, rat(-23, 36)));
        let w: Vec<Exponent> = all_witnesses(&eq, 10).unwrap().into_iter().map(|w| w.0).collect();
        assert!(w.contains(&Exponent::new(2, 1)));
    }

    #[test]
    fn certified_root_sets() {
        let sm = |n, m, b: &[u64]| {
            AbstractSemimodule::new(Semigroup::new(n, m).unwrap(), b.to_vec()).unwrap()
        };
        assert_eq!(certified_roots_from_semimodule(&sm(4, 5, &[4, 5, 11])), vec![rat(-11, 20)]);
        assert_eq!(
            certified_roots_from_semimodule(&sm(4, 9, &[4, 9, 14, 19])),
            vec![rat(-7, 18), rat(-19, 36), rat(-23, 36)]
        );
        assert!(certified_roots_from_semimodule(&sm(5, 7, &[5, 7])).is_empty());
    }

    #[test]
    fn zariski_examples() {
        let r = zariski_condition_check(&nice(4, 5, &[(2, int(1))])).unwrap();
        assert_eq!((r.j1, r.lambda1, r.j1_by_residue), (Some(2), Some(11), Some(2)));
        assert!(r.consistent);
        let r = zariski_condition_check(&nice(5, 7, &[])).unwrap();
        assert_eq!((r.j1, r.lambda1), (None, None));
        assert!(r.consistent);
        let r = zariski_condition_check(&nice(4, 9, &[(1, int(1))])).unwrap();
        assert_eq!(r.j1, Some(1));
        assert_eq!(r.dagger.iter().map(|c| c.lambda).collect::<Vec<_>>(), vec![14, 23]);
        assert!(r.consistent);
    }

    #[test]
    fn four_examples() {
        let r = four_condition_check(&nice(4, 9, &[(1, int(1))])).unwrap();
        assert_eq!(r.quadratic, int(-7));
        assert_eq!(r.q_prime_by_delorme, Some(0));
        assert!(r.consistent);
        let r = four_condition_check(&nice(4, 9, &[(1, int(1)), (2, rat(7, 18))])).unwrap();
        assert!(r.quadratic.is_zero());
        assert_eq!(r.q_prime_by_delorme, None);
        assert!(r.consistent);
        let r = four_condition_check(&nice(4, 13, &[(1, int(1)), (10, int(1))])).unwrap();
        assert_eq!(r.q, 0);
        assert_eq!(r.quadratic, int(-10));
        assert_eq!(r.q_prime_by_delorme, Some(0));
        assert!(r.consistent);
        assert!(four_condition_check(&nice(4, 5, &[(2, int(1))])).is_err());
    }
}
