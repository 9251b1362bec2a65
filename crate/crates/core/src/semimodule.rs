//! Γ-semimodules given by a basis `(λ_{-1}, λ_0, ..., λ_s)`: membership,
//! axes and critical values, enumeration of the increasing ones, and the
//! classification for `n = 4`.

use std::fmt;

use crate::curve::Semigroup;
use crate::error::{Error, Result};

/// `Λ = ∪ (λ_i + Γ)` for a basis starting with `n, m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbstractSemimodule {
    sg: Semigroup,
    basis: Vec<u64>,
}

impl AbstractSemimodule {
    /// Validates the basis: it starts with `n, m`, increases strictly, and no
    /// element lies in another's Γ-translate.
    pub fn new(sg: Semigroup, basis: Vec<u64>) -> Result<Self> {
        let bad = |why: &str| Err(Error::PreconditionViolation(format!("basis {basis:?}: {why}")));
        if basis.len() < 2 || basis[0] != sg.n() as u64 || basis[1] != sg.m() as u64 {
            return bad("must start with n, m");
        }
        if basis.windows(2).any(|w| w[0] >= w[1]) {
            return bad("not strictly increasing");
        }
        for (i, &li) in basis.iter().enumerate() {
            for (j, &lj) in basis.iter().enumerate() {
                if i != j && li >= lj && sg.contains(li - lj) {
                    return bad("an element is a translate of another");
                }
            }
        }
        Ok(AbstractSemimodule { sg, basis })
    }

    /// The semigroup itself as a semimodule, `Γ \ {0} = (n + Γ) ∪ (m + Γ)`.
    pub fn trivial(sg: Semigroup) -> Self {
        AbstractSemimodule {
            basis: vec![sg.n() as u64, sg.m() as u64],
            sg,
        }
    }

    /// Recovers the basis of the semimodule whose members below the
    /// conductor satisfy `member` (everything from the conductor on is a
    /// member): `λ_i = min(Λ \ Λ_{i-1})`.
    pub fn from_members(sg: Semigroup, member: impl Fn(u64) -> bool) -> Self {
        let mut sm = AbstractSemimodule::trivial(sg);
        while let Some(l) = (1..sg.conductor()).find(|&k| member(k) && !sm.contains(k)) {
            sm.basis.push(l);
        }
        sm
    }

    pub fn semigroup(&self) -> &Semigroup {
        &self.sg
    }

    pub fn basis(&self) -> &[u64] {
        &self.basis
    }

    /// Index of the last basis element, so the basis is `λ_{-1..=s}`.
    pub fn s(&self) -> i32 {
        self.basis.len() as i32 - 2
    }

    /// `λ_i` for `-1 <= i <= s`.
    pub fn lambda(&self, i: i32) -> u64 {
        self.basis[(i + 1) as usize]
    }

    /// `k ∈ Λ`.
    pub fn contains(&self, k: u64) -> bool {
        self.contains_level(k, self.s())
    }

    /// `k ∈ Λ_level = ∪_{i <= level} (λ_i + Γ)`.
    pub fn contains_level(&self, k: u64, level: i32) -> bool {
        self.basis[..(level + 2).max(0) as usize]
            .iter()
            .any(|&l| k >= l && self.sg.contains(k - l))
    }

    /// Largest `i <= level` with `k ∈ λ_i + Γ`.
    pub fn last_level_containing(&self, k: u64, level: i32) -> Option<i32> {
        (-1..=level)
            .rev()
            .find(|&i| k >= self.lambda(i) && self.sg.contains(k - self.lambda(i)))
    }

    /// `u_i = min((λ_{i-1} + Γ) ∩ Λ_{i-2})` for `1 <= i <= s + 1`.
    pub fn axis(&self, i: i32) -> u64 {
        assert!(i >= 1 && i <= self.s() + 1, "axis index {i} out of range");
        let l = self.lambda(i - 1);
        (l..=l + self.sg.conductor() + self.sg.nm())
            .find(|&k| self.sg.contains(k - l) && self.contains_level(k, i - 2))
            .expect("the conductor bounds every axis")
    }

    /// `(u_1, ..., u_s)`.
    pub fn axes(&self) -> Vec<u64> {
        (1..=self.s()).map(|i| self.axis(i)).collect()
    }

    /// `(t_{-1}, ..., t_s)` with `t_{-1} = n`, `t_0 = m`, `t_1 = n + m` and
    /// `t_j = t_{j-1} + u_j - λ_{j-1}`.
    pub fn criticals(&self) -> Vec<u64> {
        let mut t = vec![self.sg.n() as u64, self.sg.m() as u64];
        for j in 1..=self.s() {
            t.push(t[j as usize] + self.axis(j) - self.lambda(j - 1));
        }
        t
    }

    /// `λ_i > u_i` for every `i >= 1`.
    pub fn is_increasing(&self) -> bool {
        (1..=self.s()).all(|i| self.lambda(i) > self.axis(i))
    }

    /// `Λ \ Λ_level`, a finite set below the conductor.
    pub fn elements_outside(&self, level: i32) -> Result<Vec<u64>> {
        if level < -1 || level > self.s() {
            return Err(Error::PreconditionViolation(format!(
                "level {level} outside -1..={}",
                self.s()
            )));
        }
        let top = self.sg.conductor() + self.lambda(self.s());
        Ok((1..top)
            .filter(|&k| self.contains(k) && !self.contains_level(k, level))
            .collect())
    }

    /// Basis extended by one element (unchecked apart from ordering).
    fn pushed(&self, l: u64) -> Self {
        let mut basis = self.basis.clone();
        basis.push(l);
        AbstractSemimodule {
            sg: self.sg,
            basis,
        }
    }
}

impl fmt::Display for AbstractSemimodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.basis.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// A semimodule basis together with its axes and critical values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemimoduleBasis {
    pub semimodule: AbstractSemimodule,
    /// `(u_1, ..., u_s)`.
    pub axes: Vec<u64>,
    /// `(t_{-1}, ..., t_s)`.
    pub criticals: Vec<u64>,
}

impl SemimoduleBasis {
    pub fn new(semimodule: AbstractSemimodule) -> Self {
        SemimoduleBasis {
            axes: semimodule.axes(),
            criticals: semimodule.criticals(),
            semimodule,
        }
    }

    pub fn lambdas(&self) -> &[u64] {
        self.semimodule.basis()
    }

    pub fn s(&self) -> i32 {
        self.semimodule.s()
    }

    pub fn lambda(&self, i: i32) -> u64 {
        self.semimodule.lambda(i)
    }

    /// `u_i` for `1 <= i <= s`.
    pub fn u(&self, i: i32) -> u64 {
        self.axes[(i - 1) as usize]
    }

    /// `t_i` for `-1 <= i <= s`.
    pub fn t(&self, i: i32) -> u64 {
        self.criticals[(i + 1) as usize]
    }
}

/// All increasing semimodules of the semigroup, by depth-first extension
/// from `(n, m)`; each node is emitted, then extended by every `λ > u` not
/// yet in the semimodule and below the conductor.
pub fn enumerate_increasing(sg: &Semigroup) -> Vec<AbstractSemimodule> {
    let mut out = Vec::new();
    let mut stack = vec![AbstractSemimodule::trivial(*sg)];
    while let Some(sm) = stack.pop() {
        let u = sm.axis(sm.s() + 1);
        for l in (u + 1..sg.conductor()).rev() {
            if !sm.contains(l) {
                stack.push(sm.pushed(l));
            }
        }
        out.push(sm);
    }
    out.sort_by(|a, b| a.basis.cmp(&b.basis));
    out
}

/// Which case of the `n = 4` classification a basis falls in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FourClassification {
    pub alpha: u32,
    pub epsilon: u32,
    /// 1, 2 or 3.
    pub case: u8,
    pub q: Option<u32>,
    pub q_prime: Option<u32>,
}

/// `m = 4α + ε` with `ε ∈ {1, 3}`.
pub fn alpha_epsilon(m: u32) -> (u32, u32) {
    (m / 4, m % 4)
}

/// Matches a basis for `n = 4` against the three cases.
pub fn classify_four(sm: &AbstractSemimodule) -> Result<FourClassification> {
    let sg = sm.semigroup();
    if sg.n() != 4 {
        return Err(Error::PreconditionViolation(format!("n = {} is not 4", sg.n())));
    }
    let (alpha, epsilon) = alpha_epsilon(sg.m());
    let unclassifiable = || Error::Unclassifiable(sm.basis().to_vec());
    let mut c = FourClassification {
        alpha,
        epsilon,
        case: 1,
        q: None,
        q_prime: None,
    };
    match sm.basis() {
        [_, _] => Ok(c),
        [_, _, l1] => {
            if *l1 > 4 + sg.m() as u64 && !sg.contains(*l1) {
                c.case = 2;
                Ok(c)
            } else {
                Err(unclassifiable())
            }
        }
        [_, _, l1, l2] => {
            let (a, e) = (alpha as i64, epsilon as i64);
            let q4 = *l1 as i64 - 4 * (a + 1) - 2 * e;
            let qp4 = *l2 as i64 - 8 * a - 3 * e;
            if alpha < 2 || q4 < 0 || qp4 < 0 || q4 % 4 != 0 || qp4 % 4 != 0 {
                return Err(unclassifiable());
            }
            let (q, qp) = (q4 / 4, qp4 / 4);
            if q > a - 2 || qp > q {
                return Err(unclassifiable());
            }
            c.case = 3;
            c.q = Some(q as u32);
            c.q_prime = Some(qp as u32);
            Ok(c)
        }
        _ => Err(unclassifiable()),
    }
}

/// The bases allowed by the `n = 4` classification, in closed form.
pub fn four_family(m: u32) -> Result<Vec<Vec<u64>>> {
    let sg = Semigroup::new(4, m)?;
    let (alpha, epsilon) = alpha_epsilon(m);
    let m64 = m as u64;
    let mut out = vec![vec![4, m64]];
    for l1 in 4 + m64 + 1..sg.conductor() {
        if !sg.contains(l1) {
            out.push(vec![4, m64, l1]);
        }
    }
    if alpha >= 2 {
        let (a, e) = (alpha as u64, epsilon as u64);
        for q in 0..=a - 2 {
            for qp in 0..=q {
                out.push(vec![4, m64, 4 * (a + 1) + 2 * e + 4 * q, 8 * a + 3 * e + 4 * qp]);
            }
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sm(n: u32, m: u32, basis: &[u64]) -> AbstractSemimodule {
        AbstractSemimodule::new(Semigroup::new(n, m).unwrap(), basis.to_vec()).unwrap()
    }

    #[test]
    fn membership_examples() {
        assert!(sm(4, 5, &[4, 5]).contains(9));
        let s = sm(4, 5, &[4, 5, 11]);
        assert!(s.contains(11));
        assert!(!s.contains(7));
        assert!((16..40).all(|k| sm(4, 5, &[4, 5]).contains(k)));
    }

    #[test]
    fn invalid_bases() {
        let sg = Semigroup::new(4, 5).unwrap();
        assert!(AbstractSemimodule::new(sg, vec![4, 5, 13]).is_err());
        assert!(AbstractSemimodule::new(sg, vec![5, 4]).is_err());
    }

    #[test]
    fn axes_examples() {
        let s = sm(4, 9, &[4, 9, 14, 19]);
        assert_eq!(s.axes(), vec![13, 18]);
        assert_eq!(s.criticals(), vec![4, 9, 13, 17]);
        assert_eq!(sm(4, 5, &[4, 5, 11]).axis(2), 15);
        assert_eq!(sm(5, 7, &[5, 7]).axis(1), 12);
    }

    #[test]
    fn enumerate_examples() {
        let bases = |n, m| -> Vec<Vec<u64>> {
            enumerate_increasing(&Semigroup::new(n, m).unwrap())
                .into_iter()
                .map(|s| s.basis().to_vec())
                .collect()
        };
        assert_eq!(bases(4, 5), vec![vec![4, 5], vec![4, 5, 11]]);
        assert_eq!(bases(2, 9), vec![vec![2, 9]]);
        assert_eq!(bases(4, 9), four_family(9).unwrap());
        assert!(bases(4, 9).contains(&vec![4, 9, 14, 19]));
    }

    #[test]
    fn classify_examples() {
        let c = classify_four(&sm(4, 9, &[4, 9])).unwrap();
        assert_eq!((c.case, c.alpha, c.epsilon), (1, 2, 1));
        let c = classify_four(&sm(4, 9, &[4, 9, 14, 19])).unwrap();
        assert_eq!((c.case, c.q, c.q_prime), (3, Some(0), Some(0)));
        let c = classify_four(&sm(4, 13, &[4, 13, 19])).unwrap();
        assert_eq!(c.case, 2);
        assert!(classify_four(&sm(5, 7, &[5, 7])).is_err());
    }

    #[test]
    fn outside_examples() {
        assert_eq!(sm(4, 5, &[4, 5, 11]).elements_outside(0).unwrap(), vec![11]);
        assert_eq!(
            sm(4, 9, &[4, 9, 14, 19]).elements_outside(0).unwrap(),
            vec![14, 19, 23]
        );
        assert!(sm(4, 9, &[4, 9]).elements_outside(0).unwrap().is_empty());
    }

    #[test]
    fn recovery_from_members() {
        let s = sm(4, 9, &[4, 9, 14, 19]);
        let r = AbstractSemimodule::from_members(*s.semigroup(), |k| s.contains(k));
        assert_eq!(r, s);
    }
}
