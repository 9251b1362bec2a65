use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use cusp_cli::spec::{parse_spec, Coefficients, SpecError};
use cusp_core::{int, rat};
use serde_json::Value;

fn curves_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../curves")
}

fn cusp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cusp")).args(args).output().unwrap()
}

fn json_of(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let out = cusp(&all);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn curve(name: &str) -> String {
    curves_dir().join(name).to_string_lossy().into_owned()
}

#[test]
fn parse_examples() {
    let s = parse_spec("n=4\nm=5\nz 2 = 1").unwrap();
    assert_eq!((s.n, s.m), (4, 5));
    assert_eq!(s.coeffs, Coefficients::Nice(vec![(2, int(1))]));
    assert!(matches!(
        parse_spec("n=4\nm=8"),
        Err(SpecError::InvalidPair { line: 2, n: 4, m: 8 })
    ));
    match parse_spec("n=4\nm=5\nz 3 = 1") {
        Err(SpecError::CoefficientOutsideJ { line: 3, j: 3, allowed }) => assert_eq!(allowed, vec![2]),
        other => panic!("{other:?}"),
    }
}

#[test]
fn parse_diagnostics_name_the_line() {
    let err = parse_spec("# header\nn = 4\nm = 9\nz 1 = one\n").unwrap_err();
    assert!(err.to_string().starts_with("line 4:"), "{err}");
    let err = parse_spec("n = 4\nm = 9\nz 1 = 1\nterm 1 7 1\n").unwrap_err();
    assert!(err.to_string().starts_with("line 3:"), "{err}");
    let err = parse_spec("n = 4\nm = 9\nfoo = 1\n").unwrap_err();
    assert!(err.to_string().starts_with("line 3:"), "{err}");
    // x^2 y^2 has weight 26 < 36, so this is not adapted.
    assert!(matches!(parse_spec("n = 4\nm = 9\nterm 1 2 2\n"), Err(SpecError::Curve { .. })));
    let s = parse_spec("n = 4\nm = 9\nz1 = -7/18\nprecision = 512\nseed = 3\n").unwrap();
    assert_eq!(s.coeffs, Coefficients::Nice(vec![(1, rat(-7, 18))]));
    assert_eq!((s.precision, s.seed), (Some(512), Some(3)));
}

#[test]
fn delorme_and_roots_for_the_four_nine_curve() {
    let v = json_of(&["delorme", "--spec", &curve("cusp_4_9.curve")]);
    assert_eq!(v["semimodule"]["basis"], serde_json::json!([4, 9, 14, 19]));
    let v = json_of(&["bs-roots", "--spec", &curve("cusp_4_9.curve")]);
    assert_eq!(v["bernstein"]["certified_roots"], serde_json::json!(["-7/18", "-19/36", "-23/36"]));
    let j10 = v["bernstein"]["candidates"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["j"] == 10)
        .unwrap();
    assert_eq!(j10["kind"], "beta_root");
    let witnesses: Vec<&Value> = j10["witnesses"].as_array().unwrap().iter().map(|w| &w["ab"]).collect();
    assert!(witnesses.contains(&&serde_json::json!([2, 1])));
}

#[test]
fn enumerate_lists_the_four_family() {
    let v = json_of(&["enumerate", "--spec", &curve("cusp_4_9.curve")]);
    let block = &v["enumerate"][0];
    assert_eq!(block["matches_closed_form"], true);
    let got: Vec<Vec<u64>> = serde_json::from_value(block["semimodules"].clone()).unwrap();
    let mut got = got;
    got.sort();
    assert_eq!(
        got,
        vec![vec![4, 9], vec![4, 9, 14], vec![4, 9, 14, 19], vec![4, 9, 15], vec![4, 9, 19], vec![4, 9, 23]]
    );
    let v = json_of(&["enumerate", "--spec", &curve("cusp_4_9.curve"), "--max-m", "21"]);
    assert_eq!(v["enumerate"].as_array().unwrap().len(), 9);
}

#[test]
fn jacobian_of_the_four_five_curve() {
    let v = json_of(&["jacobian", "--spec", &curve("cusp_4_5.curve")]);
    assert_eq!(v["jacobian"]["tjurina"], 11);
    let v = json_of(&["jacobian", "--spec", &curve("adapted_4_5.curve")]);
    assert_eq!(v["jacobian"]["tjurina"], 11);
}

#[test]
fn residue_needs_points_in_j_and_m() {
    let spec = curve("cusp_4_9.curve");
    let v = json_of(&["residue", "--spec", &spec, "--j", "10", "--ab", "2,1"]);
    assert_eq!(v["residue"]["verdict"], "nonzero");
    assert_eq!(cusp(&["residue", "--spec", &spec, "--j", "3", "--ab", "2,1"]).status.code(), Some(2));
    assert_eq!(cusp(&["residue", "--spec", &spec, "--j", "10", "--ab", "3,3"]).status.code(), Some(2));
    assert_eq!(cusp(&["residue", "--spec", &spec, "--j", "10"]).status.code(), Some(2));
}

#[test]
fn input_errors_exit_with_two() {
    let dir = std::env::temp_dir().join(format!("cusp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.curve");
    std::fs::write(&bad, "n=4\nm=8\n").unwrap();
    let out = cusp(&["semigroup", "--spec", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(cusp(&["semigroup"]).status.code(), Some(2));
    assert_eq!(cusp(&["semigroup", "--spec", "/nonexistent.curve"]).status.code(), Some(2));
    // Adapted equations have no residues.
    assert_eq!(cusp(&["bs-roots", "--spec", &curve("adapted_4_5.curve")]).status.code(), Some(2));
}

#[test]
fn verify_passes_on_every_shipped_curve() {
    let mut seen = 0;
    for entry in std::fs::read_dir(curves_dir()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "curve") {
            let out = cusp(&["verify", "--spec", path.to_str().unwrap()]);
            assert_eq!(
                out.status.code(),
                Some(0),
                "{}\n{}",
                path.display(),
                String::from_utf8_lossy(&out.stdout)
            );
            seen += 1;
        }
    }
    assert!(seen >= 10);
}

#[test]
fn reports_are_deterministic() {
    let spec = curve("cusp_6_7.curve");
    let a = cusp(&["report", "--spec", &spec, "--seed", "5"]);
    let b = cusp(&["report", "--spec", &spec, "--seed", "5"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let a = cusp(&["conjecture-scan", "--seed", "9", "--max-m", "11", "--json"]);
    let b = cusp(&["conjecture-scan", "--seed", "9", "--max-m", "11", "--json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn text_output_is_key_value() {
    let out = cusp(&["semigroup", "--spec", &curve("cusp_4_9.curve")]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "semigroup.n = 4\nsemigroup.m = 9\nsemigroup.conductor = 24\nsemigroup.gaps = [1, 2, 3, 5, 6, 7, 10, 11, 14, 15, 19, 23]\n"
    );
}
