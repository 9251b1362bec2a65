//! Command-line front end: curve specification files, report assembly and
//! the `cusp` subcommands.

pub mod report;
pub mod spec;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use cusp_core::bernstein::{certify_nonzero, residue_detailed, DEFAULT_PRECISION};
use cusp_core::{delorme, CurveEquation, Error, Exponent, Semigroup};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::report::{q, render};
use crate::spec::{parse_spec, CurveSpec, SpecError};

#[derive(Parser, Debug)]
#[command(name = "cusp", version, about = "Exact invariants of plane cusps")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Curve specification file.
    #[arg(long, global = true)]
    pub spec: Option<PathBuf>,
    /// Emit JSON instead of `key = value` lines.
    #[arg(long, global = true)]
    pub json: bool,
    /// Truncation horizon as a multiple of nm.
    #[arg(long, global = true)]
    pub horizon_mult: Option<u64>,
    /// Starting precision in bits for interval certificates.
    #[arg(long, global = true)]
    pub precision: Option<u32>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub j: Option<u64>,
    /// Residue point as `a,b`.
    #[arg(long, global = true)]
    pub ab: Option<String>,
    #[arg(long, global = true)]
    pub max_m: Option<u32>,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Semigroup, conductor and gaps.
    Semigroup,
    /// The sets J, P and M.
    CuspidalSets,
    /// Minimal basis of differentials and its semimodule.
    Delorme,
    /// Root decisions for every candidate and the certified root set.
    BsRoots,
    /// One residue, at `--j` and `--ab`.
    Residue,
    /// Extended Jacobian ideal and Tjurina number.
    Jacobian,
    /// Increasing semimodules of the pair (or of every m up to `--max-m`).
    Enumerate,
    /// Every block at once.
    Report,
    /// Full verification battery; exit code 1 on any failure.
    Verify,
    /// Random curves for all pairs with m up to `--max-m`, trying every
    /// value outside the semigroup as a root.
    ConjectureScan,
}

/// Output and exit status of one invocation.
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

enum Failure {
    Input(String),
    Compute(String),
}

impl From<SpecError> for Failure {
    fn from(e: SpecError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidPair { .. }
            | Error::NotAdapted(_)
            | Error::NegativeK(_)
            | Error::NotInJ(_)
            | Error::NotInM { .. }
            | Error::PreconditionViolation(_) => Failure::Input(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

struct Settings {
    horizon_mult: u64,
    bits: u32,
    seed: u64,
}

fn load_spec(cli: &Cli) -> Result<CurveSpec, Failure> {
    let path = cli
        .spec
        .as_ref()
        .ok_or_else(|| Failure::Input("--spec is required for this subcommand".into()))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_spec(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn settings(cli: &Cli, spec: Option<&CurveSpec>) -> Settings {
    Settings {
        horizon_mult: cli.horizon_mult.or(spec.and_then(|s| s.horizon_mult)).unwrap_or(4),
        bits: cli.precision.or(spec.and_then(|s| s.precision)).unwrap_or(DEFAULT_PRECISION),
        seed: cli.seed.or(spec.and_then(|s| s.seed)).unwrap_or(0),
    }
}

fn parse_ab(s: &str) -> Result<Exponent, Failure> {
    let bad = || Failure::Input(format!("--ab expects `a,b`, got {s:?}"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok(Exponent::new(
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn execute(cli: &Cli) -> Result<(Value, bool), Failure> {
    if cli.command == Command::ConjectureScan {
        return conjecture_scan(cli);
    }
    let spec = load_spec(cli)?;
    let st = settings(cli, Some(&spec));
    let sg = spec.semigroup();
    let eq = || -> Result<CurveEquation, Failure> { Ok(spec.equation(st.horizon_mult)?) };
    let mut out = Map::new();
    let mut passed = true;
    match cli.command {
        Command::Semigroup => {
            out.insert("semigroup".into(), report::semigroup_block(&sg));
        }
        Command::CuspidalSets => {
            out.insert("cuspidal".into(), report::cuspidal_block(&sg));
        }
        Command::Delorme => {
            let diff = delorme(&eq()?)?;
            out.insert("semimodule".into(), report::semimodule_block(&diff));
            out.insert("differentials".into(), report::differentials_block(&diff));
        }
        Command::BsRoots => {
            let eq = eq()?;
            let diff = delorme(&eq)?;
            out.insert("bernstein".into(), report::bernstein_block(&eq, &diff, st.bits)?);
        }
        Command::Residue => {
            let eq = eq()?;
            let j = cli.j.ok_or_else(|| Failure::Input("residue needs --j".into()))?;
            let ab = parse_ab(cli.ab.as_deref().ok_or_else(|| Failure::Input("residue needs --ab".into()))?)?;
            if !eq.cuspidal_sets().contains_j(j) {
                return Err(Error::NotInJ(j).into());
            }
            let beta = cusp_core::bernstein::RootCandidate::new(&sg, j).beta;
            let r = residue_detailed(&eq, ab, &beta)?;
            let verdict = r.verdict();
            let cert = if verdict.is_zero() {
                Value::Null
            } else {
                let c = certify_nonzero(&r.terms, st.bits)?;
                json!({ "bits": c.bits, "lower": c.lower, "upper": c.upper })
            };
            out.insert(
                "residue".into(),
                json!({
                    "j": j,
                    "ab": report::exp(ab),
                    "beta": q(&beta),
                    "k": r.k,
                    "sequences": r.sequences.len(),
                    "expression": r.expr.to_string(),
                    "verdict": verdict.as_str(),
                    "certificate": cert,
                }),
            );
        }
        Command::Jacobian => {
            let eq = eq()?;
            let diff = delorme(&eq)?;
            out.insert("jacobian".into(), report::jacobian_block(&eq, &diff)?);
        }
        Command::Enumerate => {
            let pairs: Vec<Semigroup> = match cli.max_m {
                None => vec![sg],
                Some(max_m) => (sg.n() + 1..=max_m)
                    .filter(|&m| gcd(sg.n(), m) == 1)
                    .map(|m| Semigroup::new(sg.n(), m))
                    .collect::<Result<_, _>>()?,
            };
            let blocks: Vec<Value> = pairs.iter().map(report::enumerate_block).collect::<Result<_, _>>()?;
            for b in &blocks {
                passed &= b.get("matches_closed_form").and_then(Value::as_bool).unwrap_or(true);
            }
            out.insert("enumerate".into(), Value::Array(blocks));
        }
        Command::Report | Command::Verify => {
            let eq = eq()?;
            let diff = delorme(&eq)?;
            if cli.command == Command::Report {
                out.insert("semigroup".into(), report::semigroup_block(&sg));
                out.insert("cuspidal".into(), report::cuspidal_block(&sg));
                out.insert("semimodule".into(), report::semimodule_block(&diff));
                out.insert("differentials".into(), report::differentials_block(&diff));
                if eq.form() == cusp_core::Form::Nice {
                    out.insert("bernstein".into(), report::bernstein_block(&eq, &diff, st.bits)?);
                }
                out.insert("jacobian".into(), report::jacobian_block(&eq, &diff)?);
            }
            let v = report::verification_block(&eq, &diff, spec.t_horizon, st.seed, 200, st.bits)?;
            passed = v.passed;
            out.insert("verification".into(), v.block);
            out.insert("passed".into(), json!(passed));
        }
        Command::ConjectureScan => unreachable!(),
    }
    Ok((Value::Object(out), passed))
}

fn conjecture_scan(cli: &Cli) -> Result<(Value, bool), Failure> {
    let st = settings(cli, None);
    let max_m = cli.max_m.unwrap_or(13);
    let mut rng = ChaCha8Rng::seed_from_u64(st.seed);
    let mut curves = Vec::new();
    let mut failing = 0;
    for m in 3..=max_m {
        for n in 2..m {
            if gcd(n, m) != 1 {
                continue;
            }
            let sg = Semigroup::new(n, m)?;
            let eq = cusp_core::sample::nice_curve(sg, &mut rng)?;
            let block = report::scan_curve(&eq, st.bits);
            let bad = block.get("error").is_some()
                || block["failures"].as_array().is_some_and(|f| !f.is_empty());
            failing += bad as usize;
            curves.push(block);
        }
    }
    Ok((
        json!({
            "scan": {
                "seed": st.seed,
                "max_m": max_m,
                "curves": curves.len(),
                "curves_with_failures": failing,
                "results": curves,
            }
        }),
        true,
    ))
}

pub fn run(cli: &Cli) -> Outcome {
    match execute(cli) {
        Ok((value, passed)) => Outcome {
            stdout: render(&value, cli.json),
            stderr: String::new(),
            code: if passed { 0 } else { 1 },
        },
        Err(Failure::Input(msg)) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
            code: 2,
        },
        Err(Failure::Compute(msg)) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
            code: 1,
        },
    }
}
