//! Report blocks as ordered JSON, and their line-oriented rendering.

use std::fmt::Write;

use cusp_core::bernstein::{
    all_witnesses, certified_roots_from_semimodule, decide_root, first_translate_outside, four_condition_check,
    zariski_condition_check, Certificate, RootKind, Verdict,
};
use cusp_core::differentials::{
    delorme, differential_value, monomial_value, oracle_differential_value, semimodule_by_echelon,
};
use cusp_core::jacobian::{jacobian_basis_direct, jacobian_basis_via_differentials, tjurina_number};
use cusp_core::semimodule::{enumerate_increasing, four_family};
use cusp_core::{
    newton_puiseux, CurveEquation, CuspidalSets, DifferentialBasis, Error, Exponent, Form, Rational,
    Semigroup,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

pub fn q(r: &Rational) -> Value {
    Value::String(r.to_string())
}

pub fn exp(e: Exponent) -> Value {
    json!([e.a, e.b])
}

pub fn semigroup_block(sg: &Semigroup) -> Value {
    json!({
        "n": sg.n(),
        "m": sg.m(),
        "conductor": sg.conductor(),
        "gaps": sg.gaps(),
    })
}

pub fn cuspidal_block(sg: &Semigroup) -> Value {
    let cs = CuspidalSets::new(sg);
    json!({
        "J": cs.j,
        "P": cs.p.iter().map(|&e| exp(e)).collect::<Vec<_>>(),
        "M": cs.m_set.iter().map(|&e| exp(e)).collect::<Vec<_>>(),
    })
}

pub fn semimodule_block(diff: &DifferentialBasis) -> Value {
    let sm = diff.semimodule();
    json!({
        "basis": sm.basis(),
        "axes": sm.axes(),
        "criticals": sm.criticals(),
        "lambda_minus_gamma": sm.elements_outside(0).unwrap_or_default(),
    })
}

pub fn differentials_block(diff: &DifferentialBasis) -> Value {
    let v = &diff.values;
    let lps = diff.leading_powers();
    let forms: Vec<Value> = (-1..=v.s())
        .map(|i| {
            let mut o = Map::new();
            o.insert("i".into(), json!(i));
            o.insert("value".into(), json!(v.lambda(i)));
            o.insert("monomial_value".into(), json!(monomial_value(diff.form(i))));
            o.insert("h_leading_power".into(), exp(lps[(i + 1) as usize]));
            o.insert("form".into(), json!(diff.form(i).to_string()));
            Value::Object(o)
        })
        .collect();
    json!({ "forms": forms })
}

fn certificate(c: &Option<Certificate>) -> Value {
    match c {
        Some(c) => json!({ "bits": c.bits, "lower": c.lower, "upper": c.upper }),
        None => Value::Null,
    }
}

pub fn bernstein_block(eq: &CurveEquation, diff: &DifferentialBasis, bits: u32) -> Result<Value, Error> {
    let cs = eq.cuspidal_sets();
    let mut decisions = Vec::new();
    let mut assumed = false;
    for &j in &cs.j {
        let d = decide_root(eq, j, bits)?;
        assumed |= d.verdict == Verdict::NonzeroAssumingIndependence;
        let witnesses: Vec<Value> = all_witnesses(eq, j)?
            .into_iter()
            .map(|(e, v)| json!({ "ab": exp(e), "verdict": v.as_str() }))
            .collect();
        decisions.push(json!({
            "j": j,
            "beta": q(&d.candidate.beta),
            "kind": d.kind.as_str(),
            "root": q(&d.root),
            "witness": d.witness.map(exp),
            "verdict": d.verdict.as_str(),
            "certificate": certificate(&d.certificate),
            "witnesses": witnesses,
        }));
    }
    let sm = diff.semimodule();
    let roots: Vec<Value> = certified_roots_from_semimodule(sm).iter().map(q).collect();
    Ok(json!({
        "candidates": decisions,
        "certified_roots": roots,
        "assumes_gamma_independence": assumed,
    }))
}

pub fn jacobian_block(eq: &CurveEquation, diff: &DifferentialBasis) -> Result<Value, Error> {
    let via = jacobian_basis_via_differentials(eq, diff)?;
    let direct = jacobian_basis_direct(eq)?;
    Ok(json!({
        "leading_powers": via.leading_powers.iter().map(|&e| exp(e)).collect::<Vec<_>>(),
        "direct_leading_powers": direct.leading_powers.iter().map(|&e| exp(e)).collect::<Vec<_>>(),
        "tjurina": tjurina_number(eq)?,
    }))
}

pub fn enumerate_block(sg: &Semigroup) -> Result<Value, Error> {
    let found: Vec<Vec<u64>> = enumerate_increasing(sg).iter().map(|s| s.basis().to_vec()).collect();
    let mut o = Map::new();
    o.insert("n".into(), json!(sg.n()));
    o.insert("m".into(), json!(sg.m()));
    o.insert("count".into(), json!(found.len()));
    if sg.n() == 4 {
        let family = four_family(sg.m())?;
        let mut sorted = found.clone();
        sorted.sort();
        o.insert("matches_closed_form".into(), json!(sorted == family));
    }
    o.insert("semimodules".into(), json!(found));
    Ok(Value::Object(o))
}

/// Checks run by `verify`; every entry is a pass flag plus detail.
pub struct Verification {
    pub block: Value,
    pub passed: bool,
}

pub fn verification_block(
    eq: &CurveEquation,
    diff: &DifferentialBasis,
    t_horizon: Option<u64>,
    seed: u64,
    forms: usize,
    bits: u32,
) -> Result<Verification, Error> {
    let mut o = Map::new();
    let mut passed = true;
    let mut record = |name: &str, ok: bool, detail: Value| {
        passed &= ok;
        o.insert(name.into(), json!({ "ok": ok, "detail": detail }));
    };

    let param = newton_puiseux(eq, t_horizon.unwrap_or_else(|| eq.matching_t_horizon()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mismatches = 0;
    for _ in 0..forms {
        let omega = cusp_core::sample::one_form(eq, &mut rng);
        if differential_value(&omega, eq) != oracle_differential_value(&omega, &param) {
            mismatches += 1;
        }
    }
    record("oracle_agreement", mismatches == 0, json!({ "forms": forms, "mismatches": mismatches }));

    let echelon = semimodule_by_echelon(eq)?;
    record(
        "echelon_semimodule",
        &echelon == diff.semimodule(),
        json!({ "echelon": echelon.basis(), "delorme": diff.semimodule().basis() }),
    );

    let v = &diff.values;
    let delorme_ok = (1..=v.s()).all(|i| monomial_value(diff.form(i)) == Some(v.t(i)) && v.lambda(i) > v.u(i))
        && (v.s() < 1 || (v.u(1) == (eq.n() + eq.m()) as u64 && v.t(1) == v.u(1)))
        && diff.semimodule().is_increasing();
    record("delorme_properties", delorme_ok, json!(v.lambdas()));

    let via = jacobian_basis_via_differentials(eq, diff)?;
    let direct = jacobian_basis_direct(eq)?;
    let a: std::collections::BTreeSet<Exponent> = via.leading_powers.iter().copied().collect();
    let b: std::collections::BTreeSet<Exponent> = direct.leading_powers.iter().copied().collect();
    let inversion = via.values(eq.n(), eq.m()) == v.lambdas();
    record(
        "jacobian_cross_check",
        a == b && inversion && &via.semimodule(eq) == diff.semimodule(),
        json!({ "tjurina": tjurina_number(eq)? }),
    );

    if eq.form() == Form::Nice {
        let z = zariski_condition_check(eq)?;
        record(
            "zariski_invariant",
            z.consistent,
            json!({ "j1": z.j1, "lambda1": z.lambda1, "j1_by_residue": z.j1_by_residue }),
        );
        if eq.n() == 4 {
            match four_condition_check(eq) {
                Ok(r) => record(
                    "four_conditions",
                    r.consistent,
                    json!({
                        "q": r.q,
                        "quadratic": q(&r.quadratic),
                        "q_prime_by_coefficients": r.q_prime_by_coefficients,
                        "q_prime_by_delorme": r.q_prime_by_delorme,
                        "q_prime_by_residue": r.q_prime_by_residue,
                    }),
                ),
                Err(Error::PreconditionViolation(why)) => {
                    record("four_conditions", true, json!(format!("not applicable: {why}")))
                }
                Err(e) => return Err(e),
            }
        }
        let sm = diff.semimodule();
        let lambdas = if eq.n() <= 4 {
            sm.elements_outside(0)?
        } else {
            first_translate_outside(sm)
        };
        let mut failures = Vec::new();
        for &l in &lambdas {
            let j = l - eq.n() as u64 - eq.m() as u64;
            match decide_root(eq, j, bits) {
                Ok(d) if d.kind == RootKind::Beta => {}
                Ok(_) => failures.push(json!({ "lambda": l, "reason": "alpha_root" })),
                Err(e) => failures.push(json!({ "lambda": l, "reason": e.to_string() })),
            }
        }
        record(
            "certified_roots",
            failures.is_empty(),
            json!({ "lambdas": lambdas, "failures": failures }),
        );
    }
    Ok(Verification {
        block: Value::Object(o),
        passed,
    })
}

/// One curve of a conjecture scan: every `λ ∈ Λ \ Γ` is tried, whatever `n`.
pub fn scan_curve(eq: &CurveEquation, bits: u32) -> Value {
    let describe = |eq: &CurveEquation| -> Value {
        let z: Map<String, Value> = eq.coeffs().iter().map(|(j, c)| (j.to_string(), q(c))).collect();
        json!({ "n": eq.n(), "m": eq.m(), "z": z })
    };
    let diff = match delorme(eq) {
        Ok(d) => d,
        Err(e) => return json!({ "curve": describe(eq), "error": e.to_string() }),
    };
    let sm = diff.semimodule();
    let lambdas = sm.elements_outside(0).unwrap_or_default();
    let mut failures = Vec::new();
    for &l in &lambdas {
        let j = l - eq.n() as u64 - eq.m() as u64;
        match decide_root(eq, j, bits) {
            Ok(d) if d.kind == RootKind::Beta => {}
            Ok(_) => failures.push(json!({ "lambda": l, "reason": "alpha_root" })),
            Err(e) => failures.push(json!({ "lambda": l, "reason": e.to_string() })),
        }
    }
    json!({
        "curve": describe(eq),
        "basis": sm.basis(),
        "checked": lambdas.len(),
        "failures": failures,
    })
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        Value::Array(items) => {
            let inner: Vec<String> = items.iter().map(scalar).collect();
            format!("[{}]", inner.join(", "))
        }
        Value::Object(_) => v.to_string(),
        other => other.to_string(),
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Object(_) => false,
        Value::Array(items) => items.iter().all(|i| !i.is_object()),
        _ => true,
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, child, out);
            }
        }
        Value::Array(items) if !is_flat(v) => {
            for (i, child) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), child, out);
            }
        }
        _ => {
            let _ = writeln!(out, "{prefix} = {}", scalar(v));
        }
    }
}

/// `key = value` lines, one per leaf.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    flatten("", v, &mut out);
    out
}

pub fn render(v: &Value, as_json: bool) -> String {
    if as_json {
        let mut s = serde_json::to_string_pretty(v).expect("serializable");
        s.push('\n');
        s
    } else {
        render_text(v)
    }
}
