//! Command-line surface: build, verify, and analyze almost Beatty partitions.
//!
//! Exit codes are stable across commands: 0 success, 1 usage or parse error,
//! 2 violated construction precondition, 3 failed verification.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::analysis::{
    empirical_densities, find_theorem5_witness, region_polygons,
    witness_blocks, Analyzer, RegionLabel,
};
use crate::beatty::{BeattySequence, Density};
use crate::constructions::{
    build_theorem1, build_theorem2, build_theorem3, build_theorem4, complement_density,
    AlmostBeattyPartition, Construction,
    ConstructionError, DensityTriple, SequenceRole,
};
use crate::exact_reals::{parse_constants, FieldElement};
use crate::oeis::{check_sequence, BFile, OeisError, OffsetSpec};

const EXIT_OK: i32 = 0;
const EXIT_USAGE: i32 = 1;
const EXIT_PRECONDITION: i32 = 2;
const EXIT_VERIFICATION: i32 = 3;

#[derive(Parser)]
#[command(
    name = "almost-beatty",
    about = "Exact construction, analysis, and verification of almost Beatty partitions",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Emit the partition's term and error rows.
    Generate(BuildOpts),
    /// Check coverage, monotonicity, and error bounds over [1, N].
    Verify(VerifyOpts),
    /// Predicted vs. empirical perturbation-error frequencies.
    Densities(BuildOpts),
    /// Region polygons and the (u, v) scatter of complement terms.
    Regions(BuildOpts),
    /// Compare a Beatty sequence against an OEIS b-file.
    OeisCheck(OeisOpts),
    /// Search for the three-term pattern blocking error-1 partitions.
    Witness(WitnessOpts),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConstructionArg {
    Thm1,
    Thm2,
    Thm3,
    Thm4,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Table,
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PresetArg {
    GoldenThm1,
    TribonacciThm3,
    GoldenThm4,
}

impl PresetArg {
    fn config(self) -> (ConstructionArg, &'static str, &'static str, &'static str) {
        match self {
            PresetArg::GoldenThm1 => (ConstructionArg::Thm1, "1/phi^3", "1/phi^4", "1/phi"),
            PresetArg::TribonacciThm3 => (
                ConstructionArg::Thm3,
                "1/tribonacci^3",
                "1/tribonacci^2",
                "1/tribonacci",
            ),
            PresetArg::GoldenThm4 => (ConstructionArg::Thm4, "1/phi^2", "1/phi^2", "1/phi^3"),
        }
    }
}

#[derive(Args, Clone)]
struct BuildOpts {
    /// Which construction to apply.
    #[arg(long, value_enum)]
    construction: Option<ConstructionArg>,
    /// Density α as a constant expression.
    #[arg(long)]
    alpha: Option<String>,
    /// Density β as a constant expression.
    #[arg(long)]
    beta: Option<String>,
    /// Density γ as a constant expression (default: 1 − α − β).
    #[arg(long)]
    gamma: Option<String>,
    /// Named triple shortcut.
    #[arg(long, value_enum)]
    preset: Option<PresetArg>,
    /// Range limit: term indices for generate, integer horizon for verify.
    #[arg(long, default_value_t = 15)]
    n: u64,
    #[arg(long, value_enum, default_value_t = FormatArg::Table)]
    format: FormatArg,
    /// Also print exact (field-element) forms where applicable.
    #[arg(long)]
    exact: bool,
}

#[derive(Args)]
struct VerifyOpts {
    #[command(flatten)]
    build: BuildOpts,
    /// Verify rows from a JSON file produced by `generate --format json`
    /// instead of freshly generated ones.
    #[arg(long)]
    fixture: Option<PathBuf>,
}

#[derive(Args)]
struct OeisOpts {
    /// Density of the Beatty sequence, as a constant expression.
    #[arg(long)]
    alpha: String,
    /// Path to the b-file.
    #[arg(long)]
    bfile: PathBuf,
    /// Number of leading terms to compare.
    #[arg(long, default_value_t = 200)]
    n: u64,
    /// Index offset: `auto` or an integer.
    #[arg(long, default_value = "auto")]
    offset: String,
}

#[derive(Args)]
struct WitnessOpts {
    #[arg(long)]
    alpha: String,
    #[arg(long)]
    beta: String,
    #[arg(long)]
    gamma: Option<String>,
    /// Search horizon for the witness index.
    #[arg(long, default_value_t = 1000)]
    limit: u64,
    #[arg(long, value_enum, default_value_t = FormatArg::Table)]
    format: FormatArg,
}

struct CmdError {
    code: i32,
    msg: String,
}

fn fail(code: i32, msg: impl Into<String>) -> CmdError {
    CmdError { code, msg: msg.into() }
}

pub fn run() -> i32 {
    run_from(std::env::args())
}

pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let is_help = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            return if is_help { EXIT_OK } else { EXIT_USAGE };
        }
    };
    let result = match cli.cmd {
        Cmd::Generate(opts) => cmd_generate(&opts),
        Cmd::Verify(opts) => cmd_verify(&opts),
        Cmd::Densities(opts) => cmd_densities(&opts),
        Cmd::Regions(opts) => cmd_regions(&opts),
        Cmd::OeisCheck(opts) => cmd_oeis_check(&opts),
        Cmd::Witness(opts) => cmd_witness(&opts),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {}", e.msg);
            e.code
        }
    }
}

// ---------------------------------------------------------------------------
// Shared plumbing
// ---------------------------------------------------------------------------

struct Resolved {
    construction: Construction,
    partition: AlmostBeattyPartition,
    alpha_expr: String,
    beta_expr: String,
    gamma_expr: Option<String>,
}

fn precondition_name(e: &ConstructionError) -> &'static str {
    match e {
        ConstructionError::InvalidDensity(_) => "InvalidDensity",
        ConstructionError::NotDisjoint => "NotDisjoint",
        ConstructionError::RatioRational => "RatioRational",
        ConstructionError::GammaNotLargest => "GammaNotLargest",
        ConstructionError::DensitiesNotEqual => "DensitiesNotEqual",
        ConstructionError::RoleNotPresent => "RoleNotPresent",
    }
}

fn parse_triple(
    alpha: &str,
    beta: &str,
    gamma: Option<&str>,
) -> Result<DensityTriple, CmdError> {
    let exprs: Vec<&str> = match gamma {
        Some(g) => vec![alpha, beta, g],
        None => vec![alpha, beta],
    };
    let elems = parse_constants(&exprs)
        .map_err(|e| fail(EXIT_USAGE, format!("cannot parse densities: {e}")))?;
    let g = match elems.get(2) {
        Some(g) => g.clone(),
        None => complement_density(&elems[0], &elems[1]),
    };
    DensityTriple::new(elems[0].clone(), elems[1].clone(), g)
        .map_err(|e| fail(EXIT_PRECONDITION, format!("{}: {e}", precondition_name(&e))))
}

fn resolve(opts: &BuildOpts) -> Result<Resolved, CmdError> {
    let (construction, alpha, beta, gamma) = match opts.preset {
        Some(p) => {
            let (c, a, b, g) = p.config();
            (
                opts.construction.unwrap_or(c),
                opts.alpha.clone().unwrap_or_else(|| a.into()),
                opts.beta.clone().unwrap_or_else(|| b.into()),
                opts.gamma.clone().or_else(|| Some(g.into())),
            )
        }
        None => {
            let c = opts.construction.ok_or_else(|| {
                fail(EXIT_USAGE, "either --preset or --construction is required")
            })?;
            let a = opts
                .alpha
                .clone()
                .ok_or_else(|| fail(EXIT_USAGE, "--alpha is required without --preset"))?;
            let b = opts
                .beta
                .clone()
                .ok_or_else(|| fail(EXIT_USAGE, "--beta is required without --preset"))?;
            (c, a, b, opts.gamma.clone())
        }
    };
    let triple = parse_triple(&alpha, &beta, gamma.as_deref())?;
    let built = match construction {
        ConstructionArg::Thm1 => build_theorem1(triple),
        ConstructionArg::Thm2 => build_theorem2(triple),
        ConstructionArg::Thm3 => build_theorem3(triple),
        ConstructionArg::Thm4 => build_theorem4(triple),
    };
    let partition = built
        .map_err(|e| fail(EXIT_PRECONDITION, format!("{}: {e}", precondition_name(&e))))?;
    Ok(Resolved {
        construction: partition.construction(),
        partition,
        alpha_expr: alpha,
        beta_expr: beta,
        gamma_expr: gamma,
    })
}

fn construction_str(c: Construction) -> &'static str {
    match c {
        Construction::Thm1 => "thm1",
        Construction::Thm2 => "thm2",
        Construction::Thm3 => "thm3",
        Construction::Thm4 => "thm4",
    }
}

fn config_json(r: &Resolved, n: u64) -> Value {
    json!({
        "construction": construction_str(r.construction),
        "alpha": r.alpha_expr,
        "beta": r.beta_expr,
        "gamma": r.gamma_expr,
        "n": n,
    })
}

/// Rounds an exact value to `sig` significant digits, refining the enclosure
/// until both endpoints agree on the rounded string.
pub fn decimal_string(x: &FieldElement, sig: u32) -> String {
    if x.is_zero() {
        return "0".into();
    }
    if let Some(r) = x.as_rational() {
        return round_rational(&r, sig);
    }
    let mut bits = 64;
    loop {
        let iv = x.enclosure_bits(bits);
        let lo = round_rational(&iv.lo, sig);
        let hi = round_rational(&iv.hi, sig);
        if lo == hi {
            return lo;
        }
        bits *= 2;
        assert!(bits <= 1 << 20, "decimal rendering failed to stabilize");
    }
}

fn round_rational(r: &BigRational, sig: u32) -> String {
    if r.is_zero() {
        return "0".into();
    }
    let neg = r.is_negative();
    let a = r.abs();
    // Find e with 10^e <= a < 10^(e+1).
    let ten = BigRational::from(BigInt::from(10));
    let mut e: i64 = 0;
    let mut scaled = a.clone();
    while scaled >= ten {
        scaled /= &ten;
        e += 1;
    }
    while scaled < BigRational::one() {
        scaled *= &ten;
        e -= 1;
    }
    // Round a / 10^(e+1-sig) to the nearest integer (half away from zero).
    let shift = e + 1 - i64::from(sig);
    let mut scaled = a;
    let mut exp = shift;
    while exp > 0 {
        scaled /= &ten;
        exp -= 1;
    }
    while exp < 0 {
        scaled *= &ten;
        exp += 1;
    }
    let mut n = (&scaled + BigRational::new(1.into(), 2.into())).floor().to_integer();
    let cap = BigInt::from(10).pow(sig);
    let mut e = e;
    if n >= cap {
        n /= 10;
        e += 1;
    }
    let digits = n.to_string();
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if e >= 0 {
        let int_len = (e + 1) as usize;
        if int_len >= digits.len() {
            out.push_str(&digits);
            out.push_str(&"0".repeat(int_len - digits.len()));
        } else {
            out.push_str(&digits[..int_len]);
            let frac = digits[int_len..].trim_end_matches('0');
            if !frac.is_empty() {
                out.push('.');
                out.push_str(frac);
            }
        }
    } else {
        out.push_str("0.");
        out.push_str(&"0".repeat((-e - 1) as usize));
        out.push_str(digits.trim_end_matches('0'));
    }
    out
}

/// Exact rendering: a rational, or a coefficient vector over the generator.
fn exact_string(x: &FieldElement) -> String {
    if let Some(r) = x.as_rational() {
        return r.to_string();
    }
    let coeffs: Vec<String> = x.coeffs().iter().map(|c| c.to_string()).collect();
    let poly: Vec<String> = x
        .field()
        .min_poly()
        .iter()
        .map(|c| c.to_string())
        .collect();
    format!("[{}] mod [{}]", coeffs.join(", "), poly.join(", "))
}

// ---------------------------------------------------------------------------
// generate
// ---------------------------------------------------------------------------

struct Rows {
    labels: Vec<&'static str>,
    data: Vec<Vec<u64>>,
}

fn partition_rows(p: &AlmostBeattyPartition, n: u64) -> Result<Rows, CmdError> {
    let to_cmd = |e: ConstructionError| fail(EXIT_PRECONDITION, e.to_string());
    let a = p.terms(SequenceRole::ExactAlpha, n).map_err(to_cmd)?;
    let b: Vec<u64> = (1..=n)
        .map(|k| p.exact_reference(SequenceRole::AlmostBeta).term(k))
        .collect();
    let c: Vec<u64> = (1..=n)
        .map(|k| p.exact_reference(SequenceRole::AlmostGamma).term(k))
        .collect();
    let c_tilde = p.terms(SequenceRole::AlmostGamma, n).map_err(to_cmd)?;
    let err_c: Vec<u64> = p
        .perturbations(SequenceRole::AlmostGamma, n)
        .map_err(to_cmd)?
        .iter()
        .map(|r| r.error)
        .collect();
    let mut labels = vec!["a"];
    let mut data = vec![a];
    if p.roles().contains(&SequenceRole::AlmostBeta) {
        let b_tilde = p.terms(SequenceRole::AlmostBeta, n).map_err(to_cmd)?;
        let err_b: Vec<u64> = p
            .perturbations(SequenceRole::AlmostBeta, n)
            .map_err(to_cmd)?
            .iter()
            .map(|r| r.error)
            .collect();
        labels.extend(["b", "b_tilde", "err_b"]);
        data.extend([b, b_tilde, err_b]);
    } else {
        labels.push("b");
        data.push(b);
    }
    labels.extend(["c", "c_tilde", "err_c"]);
    data.extend([c, c_tilde, err_c]);
    Ok(Rows { labels, data })
}

fn rows_summary(p: &AlmostBeattyPartition, rows: &Rows) -> Value {
    let max_err = |label: &str| -> Option<u64> {
        rows.labels
            .iter()
            .position(|&l| l == label)
            .and_then(|i| rows.data[i].iter().max().copied())
    };
    json!({
        "max_err_b": max_err("err_b"),
        "max_err_c": max_err("err_c"),
        "bound_b": p.error_bound(SequenceRole::AlmostBeta),
        "bound_c": p.error_bound(SequenceRole::AlmostGamma),
        "disjointness_witness": p.disjointness_witness().map(|w| json!({"r": w.r, "s": w.s})),
    })
}

fn cmd_generate(opts: &BuildOpts) -> Result<(), CmdError> {
    let r = resolve(opts)?;
    let rows = partition_rows(&r.partition, opts.n)?;
    match opts.format {
        FormatArg::Table => {
            let mut widths: Vec<usize> = (0..opts.n as usize)
                .map(|i| {
                    rows.data
                        .iter()
                        .map(|row| row[i].to_string().len())
                        .max()
                        .unwrap_or(1)
                })
                .collect();
            let label_w = rows
                .labels
                .iter()
                .map(|l| l.len())
                .max()
                .unwrap_or(1)
                .max("n".len());
            let header: Vec<String> = (1..=opts.n)
                .map(|k| {
                    let w = widths[(k - 1) as usize].max(k.to_string().len());
                    widths[(k - 1) as usize] = w;
                    format!("{:>w$}", k)
                })
                .collect();
            println!("{:<label_w$}  {}", "n", header.join(" "));
            for (label, row) in rows.labels.iter().zip(&rows.data) {
                let cells: Vec<String> = row
                    .iter()
                    .enumerate()
                    .map(|(i, v)| format!("{:>w$}", v, w = widths[i]))
                    .collect();
                println!("{:<label_w$}  {}", label, cells.join(" "));
            }
        }
        FormatArg::Csv => {
            println!("n,{}", rows.labels.join(","));
            for i in 0..opts.n as usize {
                let cells: Vec<String> =
                    rows.data.iter().map(|row| row[i].to_string()).collect();
                println!("{},{}", i + 1, cells.join(","));
            }
        }
        FormatArg::Json => {
            let json_rows: Vec<Value> = (0..opts.n as usize)
                .map(|i| {
                    let mut obj = serde_json::Map::new();
                    obj.insert("n".into(), json!(i + 1));
                    for (label, row) in rows.labels.iter().zip(&rows.data) {
                        obj.insert((*label).into(), json!(row[i]));
                    }
                    Value::Object(obj)
                })
                .collect();
            let doc = json!({
                "config": config_json(&r, opts.n),
                "rows": json_rows,
                "summary": rows_summary(&r.partition, &rows),
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn cmd_verify(opts: &VerifyOpts) -> Result<(), CmdError> {
    if let Some(path) = &opts.fixture {
        return verify_fixture(path);
    }
    let r = resolve(&opts.build)?;
    let n = opts.build.n;
    verify_partition(&r.partition, n, true)
}

fn verify_partition(
    p: &AlmostBeattyPartition,
    limit: u64,
    report: bool,
) -> Result<(), CmdError> {
    let to_cmd = |e: ConstructionError| fail(EXIT_PRECONDITION, e.to_string());
    // exactly-once coverage of [1, limit]
    let mut covered = vec![0u8; limit as usize + 1];
    for role in p.roles() {
        let terms = p.terms_up_to(role, limit).map_err(to_cmd)?;
        let mut prev = 0u64;
        for (i, &t) in terms.iter().enumerate() {
            if i > 0 && t <= prev {
                return Err(fail(
                    EXIT_VERIFICATION,
                    format!("sequence {role:?} is not strictly increasing at term {t}"),
                ));
            }
            prev = t;
            covered[t as usize] += 1;
        }
    }
    if let Some(m) = (1..=limit).find(|&m| covered[m as usize] != 1) {
        return Err(fail(
            EXIT_VERIFICATION,
            format!("integer {m} is covered {} times", covered[m as usize]),
        ));
    }
    // error bounds and attainment
    let mut lines = vec![format!(
        "coverage: every integer in [1, {limit}] appears exactly once"
    )];
    for role in [SequenceRole::AlmostBeta, SequenceRole::AlmostGamma] {
        if !p.roles().contains(&role) {
            continue;
        }
        let bound = p.error_bound(role).expect("almost roles have bounds");
        let count = p.terms_up_to(role, limit).map_err(to_cmd)?.len() as u64;
        let perts = p.perturbations(role, count).map_err(to_cmd)?;
        let mut max_err = 0;
        let mut first_max = None;
        for rec in &perts {
            if rec.error > bound {
                return Err(fail(
                    EXIT_VERIFICATION,
                    format!(
                        "error {} at index {} of {role:?} exceeds bound {bound}",
                        rec.error, rec.n
                    ),
                ));
            }
            if rec.error > max_err {
                max_err = rec.error;
                first_max = Some(rec.n);
            }
        }
        lines.push(format!(
            "{role:?}: max error {max_err} (bound {bound}){}",
            first_max.map_or(String::new(), |n| format!(", first attained at n={n}")),
        ));
    }
    if report {
        for l in lines {
            println!("{l}");
        }
        println!("ok");
    }
    Ok(())
}

fn verify_fixture(path: &PathBuf) -> Result<(), CmdError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| fail(EXIT_USAGE, format!("cannot read fixture: {e}")))?;
    let doc: Value = serde_json::from_str(&text)
        .map_err(|e| fail(EXIT_USAGE, format!("fixture is not valid JSON: {e}")))?;
    let config = &doc["config"];
    let get = |k: &str| config[k].as_str().map(String::from);
    let opts = BuildOpts {
        construction: match config["construction"].as_str() {
            Some("thm1") => Some(ConstructionArg::Thm1),
            Some("thm2") => Some(ConstructionArg::Thm2),
            Some("thm3") => Some(ConstructionArg::Thm3),
            Some("thm4") => Some(ConstructionArg::Thm4),
            other => {
                return Err(fail(
                    EXIT_USAGE,
                    format!("fixture has unknown construction {other:?}"),
                ))
            }
        },
        alpha: get("alpha"),
        beta: get("beta"),
        gamma: get("gamma"),
        preset: None,
        n: config["n"].as_u64().unwrap_or(0),
        format: FormatArg::Json,
        exact: false,
    };
    if opts.n == 0 {
        return Err(fail(EXIT_USAGE, "fixture config lacks a positive n"));
    }
    let r = resolve(&opts)?;
    let expected = partition_rows(&r.partition, opts.n)?;
    let rows = doc["rows"]
        .as_array()
        .ok_or_else(|| fail(EXIT_USAGE, "fixture lacks a rows array"))?;
    for (i, (label, expected_row)) in expected.labels.iter().zip(&expected.data).enumerate() {
        let _ = i;
        for (idx, &want) in expected_row.iter().enumerate() {
            let got = rows
                .get(idx)
                .and_then(|row| row[*label].as_u64());
            if got != Some(want) {
                return Err(fail(
                    EXIT_VERIFICATION,
                    format!(
                        "fixture row {label} disagrees at n={}: expected {want}, found {got:?}",
                        idx + 1
                    ),
                ));
            }
        }
    }
    verify_partition(&r.partition, opts.n, false)?;
    println!("fixture matches the regenerated partition; ok");
    Ok(())
}

// ---------------------------------------------------------------------------
// densities
// ---------------------------------------------------------------------------

fn cmd_densities(opts: &BuildOpts) -> Result<(), CmdError> {
    let r = resolve(opts)?;
    if r.construction != Construction::Thm3 {
        return Err(fail(
            EXIT_PRECONDITION,
            "densities requires the dodging construction (--construction thm3)",
        ));
    }
    let est = empirical_densities(&r.partition, opts.n);
    let labels = ["P0", "P1", "P2"];
    match opts.format {
        FormatArg::Table => {
            println!(
                "{:<6} {:>14} {:>14} {:>12} {:>8}",
                "error", "predicted", "empirical", "deviation", "count"
            );
            for d in 0..3 {
                let pred = est.predicted[d].to_f64();
                println!(
                    "{:<6} {:>14} {:>14.8} {:>12.8} {:>8}{}",
                    d,
                    decimal_string(&est.predicted[d], 10),
                    est.empirical[d],
                    (est.empirical[d] - pred).abs(),
                    est.counts[d],
                    if opts.exact {
                        format!("  exact={}", exact_string(&est.predicted[d]))
                    } else {
                        String::new()
                    }
                );
            }
        }
        FormatArg::Csv => {
            println!("error,predicted,empirical,deviation,count");
            for d in 0..3 {
                let pred = est.predicted[d].to_f64();
                println!(
                    "{},{},{},{},{}",
                    d,
                    decimal_string(&est.predicted[d], 10),
                    est.empirical[d],
                    (est.empirical[d] - pred).abs(),
                    est.counts[d]
                );
            }
        }
        FormatArg::Json => {
            let rows: Vec<Value> = (0..3)
                .map(|d| {
                    json!({
                        "error": d,
                        "label": labels[d],
                        "predicted": decimal_string(&est.predicted[d], 10),
                        "predicted_exact": exact_string(&est.predicted[d]),
                        "empirical": est.empirical[d],
                        "count": est.counts[d],
                    })
                })
                .collect();
            let doc = json!({
                "config": config_json(&r, opts.n),
                "rows": rows,
                "summary": {"n_max": est.n_max},
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// regions
// ---------------------------------------------------------------------------

fn region_name(l: RegionLabel) -> &'static str {
    match l {
        RegionLabel::R0 => "R0",
        RegionLabel::R1 => "R1",
        RegionLabel::R2 => "R2",
        RegionLabel::NotInAlmostGamma => "outside",
    }
}

fn cmd_regions(opts: &BuildOpts) -> Result<(), CmdError> {
    let r = resolve(opts)?;
    if r.construction != Construction::Thm3 {
        return Err(fail(
            EXIT_PRECONDITION,
            "regions requires the dodging construction (--construction thm3)",
        ));
    }
    let geo = region_polygons(r.partition.triple());
    let an = Analyzer::new(r.partition.triple());
    let c_tilde = r
        .partition
        .terms(SequenceRole::AlmostGamma, opts.n)
        .map_err(|e| fail(EXIT_PRECONDITION, e.to_string()))?;
    let scatter: Vec<(u64, String, String, RegionLabel)> = c_tilde
        .iter()
        .map(|&m| {
            let t = an.fractional_triple(m);
            (
                m,
                decimal_string(&t.u, 10),
                decimal_string(&t.v, 10),
                an.classify_region(m),
            )
        })
        .collect();
    let polys = [("R0", &geo.r0), ("R1", &geo.r1), ("R2", &geo.r2)];
    match opts.format {
        FormatArg::Table => {
            for (name, region) in polys {
                for (i, poly) in region.iter().enumerate() {
                    let verts: Vec<String> = poly
                        .iter()
                        .map(|(u, v)| {
                            format!("({}, {})", decimal_string(u, 10), decimal_string(v, 10))
                        })
                        .collect();
                    println!("{name}[{i}]: {}", verts.join(" "));
                }
            }
            println!("{:<8} {:>14} {:>14} {:>8}", "m", "u", "v", "region");
            for (m, u, v, label) in &scatter {
                println!("{m:<8} {u:>14} {v:>14} {:>8}", region_name(*label));
            }
        }
        FormatArg::Csv => {
            println!("kind,region,part,m,u,v");
            for (name, region) in polys {
                for (i, poly) in region.iter().enumerate() {
                    for (u, v) in poly {
                        println!(
                            "vertex,{name},{i},,{},{}",
                            decimal_string(u, 10),
                            decimal_string(v, 10)
                        );
                    }
                }
            }
            for (m, u, v, label) in &scatter {
                println!("point,{},,{m},{u},{v}", region_name(*label));
            }
        }
        FormatArg::Json => {
            let polygons: Value = polys
                .iter()
                .map(|(name, region)| {
                    let parts: Vec<Value> = region
                        .iter()
                        .map(|poly| {
                            let verts: Vec<Value> = poly
                                .iter()
                                .map(|(u, v)| {
                                    json!([decimal_string(u, 10), decimal_string(v, 10)])
                                })
                                .collect();
                            json!(verts)
                        })
                        .collect();
                    (name.to_string(), json!(parts))
                })
                .collect::<serde_json::Map<String, Value>>()
                .into();
            let points: Vec<Value> = scatter
                .iter()
                .map(|(m, u, v, label)| {
                    json!({"m": m, "u": u, "v": v, "region": region_name(*label)})
                })
                .collect();
            let doc = json!({
                "config": config_json(&r, opts.n),
                "rows": points,
                "summary": {"polygons": polygons},
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// oeis-check
// ---------------------------------------------------------------------------

fn cmd_oeis_check(opts: &OeisOpts) -> Result<(), CmdError> {
    let elems = parse_constants(&[opts.alpha.as_str()])
        .map_err(|e| fail(EXIT_USAGE, format!("cannot parse density: {e}")))?;
    let density = Density::new(elems[0].clone())
        .map_err(|e| fail(EXIT_PRECONDITION, e.to_string()))?;
    let seq = BeattySequence::new(density);
    let text = std::fs::read_to_string(&opts.bfile)
        .map_err(|e| fail(EXIT_USAGE, format!("cannot read b-file: {e}")))?;
    let bfile = BFile::parse(&text).map_err(|e| fail(EXIT_USAGE, e.to_string()))?;
    let offset = if opts.offset == "auto" {
        OffsetSpec::Auto
    } else {
        OffsetSpec::Fixed(
            opts.offset
                .parse()
                .map_err(|_| fail(EXIT_USAGE, "--offset must be `auto` or an integer"))?,
        )
    };
    match check_sequence(|n| seq.term(n), &bfile, opts.n, offset) {
        Ok(report) => {
            println!(
                "match: {} terms agree with the b-file (offset {})",
                report.compared, report.offset
            );
            Ok(())
        }
        Err(e @ OeisError::MismatchAt { .. }) => Err(fail(EXIT_VERIFICATION, e.to_string())),
        Err(e) => Err(fail(EXIT_VERIFICATION, e.to_string())),
    }
}

// ---------------------------------------------------------------------------
// witness
// ---------------------------------------------------------------------------

fn cmd_witness(opts: &WitnessOpts) -> Result<(), CmdError> {
    let triple = parse_triple(&opts.alpha, &opts.beta, opts.gamma.as_deref())?;
    match find_theorem5_witness(&triple, opts.limit) {
        Some(w) => {
            let blocked = witness_blocks(&triple, &w);
            match opts.format {
                FormatArg::Json => {
                    let doc = json!({
                        "config": {"alpha": opts.alpha, "beta": opts.beta,
                                   "gamma": opts.gamma, "limit": opts.limit},
                        "rows": [{
                            "m": w.m,
                            "m_in_alpha": w.m_in_alpha,
                            "succ_in_beta": w.succ_in_beta,
                            "succ_in_gamma": w.succ_in_gamma,
                            "succ2_in_alpha": w.succ2_in_alpha,
                            "blocks": blocked,
                        }],
                        "summary": {"found": true, "m": w.m},
                    });
                    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
                }
                _ => {
                    println!("witness m = {}", w.m);
                    println!("  {} in B_alpha: {}", w.m, w.m_in_alpha);
                    println!("  {} in B_beta: {}", w.m + 1, w.succ_in_beta);
                    println!("  {} in B_gamma: {}", w.m + 1, w.succ_in_gamma);
                    println!("  {} in B_alpha: {}", w.m + 2, w.succ2_in_alpha);
                    println!("  blocking check: {blocked}");
                }
            }
            if !w.all_verified() || !blocked {
                return Err(fail(EXIT_VERIFICATION, "witness certificates failed"));
            }
            Ok(())
        }
        None => {
            println!("no witness up to limit {}", opts.limit);
            Ok(())
        }
    }
}
