//! Cross-cutting invariants: randomized identities, serialization round
//! trips, and negative controls for the verification tooling.

use std::process::Command;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use almost_beatty::analysis::Analyzer;
use almost_beatty::beatty::{disjointness_witness, BeattySequence, Density};
use almost_beatty::constructions::DensityTriple;
use almost_beatty::exact_reals::{delta, parse_constant, parse_constants, FieldElement};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_almost-beatty")
}

fn run_cli(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(bin()).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn element_from_coeffs(gen: &FieldElement, coeffs: &[(i64, i64)]) -> FieldElement {
    let field = gen.field();
    let mut acc = FieldElement::zero(field);
    let mut pow = FieldElement::one(field);
    for &(num, den) in coeffs.iter().take(field.degree()) {
        let c = BigRational::new(BigInt::from(num), BigInt::from(den.max(1)));
        acc = &acc + &pow.mul_rat(&c);
        pow = &pow * gen;
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Floor and fractional-part carry identities on random field elements.
    #[test]
    fn floor_identities(
        xs in prop::collection::vec((-30i64..30, 1i64..8), 3),
        ys in prop::collection::vec((-30i64..30, 1i64..8), 3),
        which in 0usize..3,
    ) {
        let gen = match which {
            0 => parse_constant("phi").unwrap(),
            1 => parse_constant("tribonacci").unwrap(),
            _ => parse_constant("sqrt(2) + sqrt(3)").unwrap(),
        };
        let x = element_from_coeffs(&gen, &xs);
        let y = element_from_coeffs(&gen, &ys);
        let d1 = delta(&x.frac(), &y.frac()).unwrap();
        let sum = &x + &y;
        prop_assert_eq!(sum.floor(), x.floor() + y.floor() + BigInt::from(d1));
        prop_assert_eq!(
            sum.frac(),
            (&x.frac() + &y.frac()).add_rat(&-BigRational::from(BigInt::from(d1)))
        );
        let diff = &x - &y;
        let d2 = delta(&diff.frac(), &y.frac()).unwrap();
        prop_assert_eq!(diff.floor(), x.floor() - y.floor() - BigInt::from(d2));
        prop_assert_eq!(
            diff.frac(),
            (&x.frac() - &y.frac()).add_rat(&BigRational::from(BigInt::from(d2)))
        );
    }
}

#[test]
fn csv_and_json_rows_agree() {
    let args = ["generate", "--preset", "tribonacci-thm3", "--n", "25"];
    let (code, csv, _) = run_cli(&[&args[..], &["--format", "csv"]].concat());
    assert_eq!(code, 0);
    let (code, json, _) = run_cli(&[&args[..], &["--format", "json"]].concat());
    assert_eq!(code, 0);

    let mut csv_lines = csv.lines();
    let header: Vec<&str> = csv_lines.next().unwrap().split(',').collect();
    let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
    let rows = doc["rows"].as_array().unwrap();
    let mut count = 0;
    for (line, row) in csv_lines.zip(rows) {
        for (name, cell) in header.iter().zip(line.split(',')) {
            let csv_val: u64 = cell.parse().unwrap();
            assert_eq!(row[*name].as_u64(), Some(csv_val), "column {name}");
        }
        count += 1;
    }
    assert_eq!(count, 25);
}

#[test]
fn verify_passes_on_generated_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fixture.json");
    let (code, json, _) = run_cli(&[
        "generate", "--preset", "golden-thm1", "--n", "40", "--format", "json",
    ]);
    assert_eq!(code, 0);
    std::fs::write(&path, &json).unwrap();
    let (code, out, _) = run_cli(&["verify", "--fixture", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn verify_rejects_corrupted_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fixture.json");
    let (code, json, _) = run_cli(&[
        "generate", "--preset", "golden-thm1", "--n", "40", "--format", "json",
    ]);
    assert_eq!(code, 0);
    let mut doc: serde_json::Value = serde_json::from_str(&json).unwrap();
    // drop one element of the complement row by shifting a term
    let rows = doc["rows"].as_array_mut().unwrap();
    let old = rows[6]["c_tilde"].as_u64().unwrap();
    rows[6]["c_tilde"] = serde_json::json!(old + 1);
    std::fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
    let (code, _, err) = run_cli(&["verify", "--fixture", path.to_str().unwrap()]);
    assert_eq!(code, 3, "{err}");
    assert!(err.contains("c_tilde") && err.contains("n=7"), "{err}");
}

#[test]
fn verify_command_full_checks() {
    let (code, out, _) = run_cli(&[
        "verify", "--preset", "golden-thm1", "--n", "100000",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("max error 2"), "{out}");
    assert!(out.contains("first attained at n=13"), "{out}");
    let (code, out, _) = run_cli(&["verify", "--preset", "golden-thm4", "--n", "100000"]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn oeis_negative_control() {
    // shift every value by one: the auto-aligned comparison must fail
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bshift.txt");
    let mut text = String::new();
    let phi = parse_constant("phi").unwrap();
    let seq = BeattySequence::new(Density::new(phi.inv()).unwrap());
    for n in 1..=50u64 {
        text.push_str(&format!("{n} {}\n", seq.term(n) + 1));
    }
    std::fs::write(&path, &text).unwrap();
    let (code, _, err) = run_cli(&[
        "oeis-check", "--alpha", "1/phi", "--bfile", path.to_str().unwrap(), "--n", "50",
    ]);
    assert_eq!(code, 3, "{err}");

    let (code, _, err) = run_cli(&[
        "oeis-check", "--alpha", "1/phi", "--bfile", "/nonexistent/b.txt",
    ]);
    assert_eq!(code, 1, "{err}");
}

#[test]
fn exclusive_region_conditions() {
    // the three region predicates, evaluated exactly, never overlap
    let t = {
        let elems = parse_constants(&["1/tribonacci^3", "1/tribonacci^2", "1/tribonacci"]).unwrap();
        DensityTriple::new(elems[0].clone(), elems[1].clone(), elems[2].clone()).unwrap()
    };
    let an = Analyzer::new(&t);
    let one = FieldElement::one(t.alpha().value().field());
    let one_plus_gamma = &one + t.gamma().value();
    for m in 1..=2000u64 {
        let f = an.fractional_triple(m);
        let sum = &f.u + &f.v;
        let r0 = sum.cmp_exact(&one) == std::cmp::Ordering::Less;
        let r1 = sum.cmp_exact(&one) == std::cmp::Ordering::Greater
            && sum.cmp_exact(&one_plus_gamma) == std::cmp::Ordering::Less;
        let r2 = sum.cmp_exact(&one_plus_gamma) == std::cmp::Ordering::Greater;
        assert_eq!(
            [r0, r1, r2].iter().filter(|&&b| b).count(),
            1,
            "band conditions overlap at m={m}"
        );
    }
}

#[test]
fn missing_witness_implies_intersection() {
    // pairs with no disjointness certificate share an element quickly
    for exprs in [["1/tribonacci^3", "1/tribonacci^2"], ["1/phi^2", "1/phi^2"]] {
        let elems = parse_constants(&exprs).unwrap();
        let a = Density::new(elems[0].clone()).unwrap();
        let b = Density::new(elems[1].clone()).unwrap();
        assert!(disjointness_witness(&a, &b).is_none());
        let sa = BeattySequence::new(a);
        let sb = BeattySequence::new(b);
        let seen: std::collections::HashSet<u64> = (1..=100_000).map(|n| sa.term(n)).collect();
        assert!(
            (1..=100_000u64).any(|n| seen.contains(&sb.term(n))),
            "no common element found for {exprs:?}"
        );
    }
}

#[test]
fn theorem1_bound_attained_within_horizon() {
    let elems = parse_constants(&["1/phi^3", "1/phi^4", "1/phi"]).unwrap();
    let t = DensityTriple::new(elems[0].clone(), elems[1].clone(), elems[2].clone()).unwrap();
    let bound = almost_beatty::constructions::theorem1_error_bound(t.alpha(), t.beta());
    let p = almost_beatty::constructions::build_theorem1(t).unwrap();
    let attained = p
        .perturbations(almost_beatty::constructions::SequenceRole::AlmostGamma, 1_000_000)
        .unwrap()
        .iter()
        .any(|r| r.error == bound);
    assert!(attained, "bound {bound} not attained within the horizon");
}
