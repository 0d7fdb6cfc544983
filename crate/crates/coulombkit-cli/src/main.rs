//! Command-line front end: good/ugly/bad classification, the integer charge
//! grading, positive-root tables, complete-intersection checks,
//! stratification posets, truncated monopole Hilbert series, the rank-one
//! surface family, and a verification suite over the shipped fixtures.
//!
//! Output contract: machine-readable reports go to standard output — JSON for
//! most commands, TSV for `roots`, `hilbert` and `verify-paper` — and are
//! byte-identical across repeated runs on the same input and version. Timing
//! goes to standard error. Exit status is 0 on success, 1 when a requested
//! check fails, and 2 on usage or validation errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};

use coulombkit::ci::{
    ci_check_framed_with, ci_check_unframed_with, ci_fast_path_affine, ci_fast_path_finite,
    CiReport, DecompositionPool,
};
use coulombkit::classify::{brute_force_min_with, classify_theory_with, Classification, Verdict};
use coulombkit::monopole::{two_delta, Coweight};
use coulombkit::quiver::{
    cartan_matrix, classify_graph, parse_theory, serialize_theory, DimVector, GaugeTheory,
    GraphClass,
};
use coulombkit::roots::{
    height, is_dominant, positive_roots_bounded, positive_roots_finite, RootTable, RootTag,
};
use coulombkit::series::{
    expand_rational, monopole_series_uncertified, monopole_series_with, RationalSeriesSpec,
    SeriesReport,
};
use coulombkit::strata::{
    check_order_reversing_bijection, poset_dot, strata_affine_unframed_higgs_with,
    strata_affine_unframed_with, strata_framed_finite_with, BijectionReport, MapKind,
    StratumPoset,
};
use coulombkit::surface::{sl2_classify, surface_record, surface_singular_points, SurfaceRecord};
use coulombkit::{Error, Limits};

#[derive(Parser)]
#[command(
    name = "coulombkit",
    version,
    about = "Exact combinatorics of quiver gauge theories: classification, grading, roots, \
             complete-intersection checks, strata, Hilbert series and surfaces."
)]
struct Cli {
    /// Reserved for future parallel execution; must be at least 1. All
    /// commands currently run sequentially so that reports stay deterministic.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a theory as good, ugly or bad, with a machine-checkable
    /// certificate.
    Classify {
        /// Theory description file (JSON).
        theory: PathBuf,
    },
    /// Evaluate the integer grading 2Δ at one magnetic charge.
    Delta {
        /// Theory description file (JSON).
        theory: PathBuf,
        /// Charge as JSON: per-vertex blocks like [[1,0],[2]], or a flat list
        /// like [1,0] when every block has size one.
        #[arg(long)]
        charge: String,
    },
    /// Print the positive-root table of a quiver as TSV (root, tag, height).
    Roots {
        /// Theory description file (JSON); must be a quiver.
        theory: PathBuf,
        /// Componentwise bound for affine tables, as JSON {"vertex": n}.
        /// Defaults to the theory's dimension vector.
        #[arg(long)]
        bound: Option<String>,
    },
    /// Complete-intersection check; framed or unframed is chosen by w.
    Ci {
        /// Theory description file (JSON); must be a quiver.
        theory: PathBuf,
        /// Decomposition pool for the unframed check.
        #[arg(long, value_enum, default_value_t = PoolArg::Roots)]
        pool: PoolArg,
    },
    /// Stratification posets of both branches plus the order-reversing
    /// bijection report.
    Strata {
        /// Theory description file (JSON); must be a quiver.
        theory: PathBuf,
        /// Print one poset as a DOT graph instead of the JSON report.
        #[arg(long, value_enum)]
        dot: Option<DotSide>,
    },
    /// Truncated monopole Hilbert series as TSV (degree, coefficient).
    Hilbert {
        /// Theory description file (JSON).
        theory: PathBuf,
        /// Largest degree to compute.
        #[arg(long)]
        cutoff: u32,
        /// Compare against a rational-function literal such as
        /// "(1+t^3)/((1-t^2)(1-t^3))"; exit 1 on mismatch.
        #[arg(long)]
        expect: Option<String>,
        /// Explicit charge-scan radius; marks the series uncertified.
        #[arg(long)]
        radius: Option<i64>,
    },
    /// Surface report for the rank-one family with the given flavor count.
    Sl2 {
        #[arg(long)]
        flavors: u32,
    },
    /// Re-run every shipped fixture check and print a pass/fail table.
    VerifyPaper {
        /// Directory holding the fixture files.
        #[arg(long, default_value = "fixtures")]
        fixtures: PathBuf,
        /// Also write the table as a JSON report to this file.
        #[arg(long)]
        archive: Option<PathBuf>,
        /// Append recorded (non-asserted) open-case checks.
        #[arg(long)]
        record_open_cases: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PoolArg {
    /// Positive roots of the quiver's Cartan matrix.
    Roots,
    /// All nonzero nonnegative vectors below v.
    Vectors,
}

impl PoolArg {
    fn pool(self) -> DecompositionPool {
        match self {
            PoolArg::Roots => DecompositionPool::PositiveRoots,
            PoolArg::Vectors => DecompositionPool::PositiveVectors,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DotSide {
    Coulomb,
    Higgs,
}

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Serialize)]
struct Conventions {
    lattice: &'static str,
    grading: &'static str,
}

const CONVENTIONS: Conventions = Conventions { lattice: "own", grading: "2delta" };

#[derive(Serialize)]
struct InputStamp {
    #[serde(skip_serializing_if = "Option::is_none")]
    path: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    literal: Option<String>,
    sha256: String,
}

#[derive(Serialize)]
struct Report<T: Serialize> {
    command: &'static str,
    input: InputStamp,
    conventions: Conventions,
    version: &'static str,
    payload: T,
}

#[derive(Serialize)]
struct DeltaPayload {
    charge: Coweight,
    two_delta: i64,
}

#[derive(Serialize)]
struct CiPayload {
    mode: &'static str,
    report: CiReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    fast_path: Option<CiReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    fast_path_agrees: Option<bool>,
}

#[derive(Serialize)]
struct StrataPayload {
    family: &'static str,
    map: &'static str,
    coulomb: StratumPoset,
    higgs: StratumPoset,
    bijection: BijectionReport,
}

#[derive(Serialize)]
struct Sl2Payload {
    record: SurfaceRecord,
    classification: Classification,
}

#[derive(Serialize, Clone)]
struct CheckRecord {
    check: &'static str,
    computed: String,
    expected: String,
    status: &'static str,
}

#[derive(Serialize)]
struct VerifySummary {
    checks: Vec<CheckRecord>,
    passed: usize,
    failed: usize,
    recorded: usize,
    overall: &'static str,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let code = match run(&cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    };
    eprintln!("elapsed: {} ms", start.elapsed().as_millis());
    code
}

fn run(cli: &Cli) -> Result<ExitCode, String> {
    if cli.threads == 0 {
        return Err("--threads must be at least 1".to_string());
    }
    let limits = Limits::from_env();
    match &cli.command {
        Command::Classify { theory } => {
            let (t, stamp) = load_theory(theory)?;
            let classification = classify_theory_with(&t, &limits).map_err(|e| e.to_string())?;
            print_report("classify", stamp, classification)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Delta { theory, charge } => {
            let (t, stamp) = load_theory(theory)?;
            let cw = parse_charge(charge)?;
            let value = two_delta(&t, &cw).map_err(|e| e.to_string())?;
            print_report("delta", stamp, DeltaPayload { charge: cw, two_delta: value })?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Roots { theory, bound } => {
            let (t, stamp) = load_theory(theory)?;
            run_roots(&t, stamp, bound.as_deref())
        }
        Command::Ci { theory, pool } => {
            let (t, stamp) = load_theory(theory)?;
            run_ci(&t, stamp, *pool, &limits)
        }
        Command::Strata { theory, dot } => {
            let (t, stamp) = load_theory(theory)?;
            run_strata(&t, stamp, *dot, &limits)
        }
        Command::Hilbert { theory, cutoff, expect, radius } => {
            let (t, stamp) = load_theory(theory)?;
            run_hilbert(&t, stamp, *cutoff, expect.as_deref(), *radius, &limits)
        }
        Command::Sl2 { flavors } => {
            let t = GaugeTheory::sl2(*flavors);
            let canonical = serialize_theory(&t);
            let stamp = InputStamp {
                path: None,
                literal: Some(canonical.clone()),
                sha256: sha256_hex(canonical.as_bytes()),
            };
            let record = surface_record(*flavors);
            let classification = sl2_classify(*flavors).map_err(|e| e.to_string())?;
            print_report("sl2", stamp, Sl2Payload { record, classification })?;
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyPaper { fixtures, archive, record_open_cases } => {
            run_verify(fixtures, archive.as_deref(), *record_open_cases, &limits)
        }
    }
}

fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    hasher.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

fn load_theory(path: &Path) -> Result<(GaugeTheory, InputStamp), String> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let theory = parse_theory(&text).map_err(|e| e.to_string())?;
    let stamp = InputStamp {
        path: Some(path.display().to_string()),
        literal: None,
        sha256: sha256_hex(text.as_bytes()),
    };
    Ok((theory, stamp))
}

fn print_report<T: Serialize>(
    command: &'static str,
    input: InputStamp,
    payload: T,
) -> Result<(), String> {
    let report = Report { command, input, conventions: CONVENTIONS, version: VERSION, payload };
    let text = serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?;
    println!("{text}");
    Ok(())
}

/// TSV preamble: the same stamps as the JSON envelope, as `#` comments.
fn print_tsv_header(command: &str, input: &InputStamp) {
    println!("# command: {command}");
    if let Some(path) = &input.path {
        println!("# input: {path}");
    }
    if let Some(literal) = &input.literal {
        println!("# input-literal: {literal}");
    }
    println!("# input-sha256: {}", input.sha256);
    println!("# conventions: lattice=own grading=2delta");
    println!("# version: {VERSION}");
}

/// A charge literal: an array of per-block integer arrays, or a flat integer
/// array meaning one size-one block per entry.
fn parse_charge(text: &str) -> Result<Coweight, String> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| format!("charge literal: {e}"))?;
    let arr = value
        .as_array()
        .ok_or_else(|| "charge literal must be a JSON array".to_string())?;
    if arr.is_empty() {
        return Err("charge literal must be nonempty".to_string());
    }
    if arr.iter().all(serde_json::Value::is_i64) {
        return Ok(Coweight(arr.iter().map(|x| vec![x.as_i64().unwrap()]).collect()));
    }
    let mut blocks = Vec::with_capacity(arr.len());
    for block in arr {
        let entries = block
            .as_array()
            .ok_or_else(|| "charge blocks must be arrays of integers".to_string())?;
        let mut out = Vec::with_capacity(entries.len());
        for x in entries {
            out.push(x.as_i64().ok_or_else(|| "charge entries must be integers".to_string())?);
        }
        blocks.push(out);
    }
    Ok(Coweight(blocks))
}

/// A componentwise bound literal: JSON object {"vertex": n} in the style of
/// the `v`/`w` fields of a theory file.
fn parse_bound(text: &str, ids: &[String]) -> Result<DimVector, String> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| format!("bound literal: {e}"))?;
    let map = value
        .as_object()
        .ok_or_else(|| "bound literal must be a JSON object".to_string())?;
    for key in map.keys() {
        if !ids.contains(key) {
            return Err(format!("bound mentions unknown vertex `{key}`"));
        }
    }
    let mut out = Vec::with_capacity(ids.len());
    for id in ids {
        let x = map
            .get(id)
            .map(|v| v.as_u64().ok_or_else(|| format!("bound for `{id}` must be a nonnegative integer")))
            .transpose()?
            .unwrap_or(0);
        out.push(x as u32);
    }
    Ok(DimVector(out))
}

fn tag_str(tag: RootTag) -> &'static str {
    match tag {
        RootTag::Real => "real",
        RootTag::Imaginary => "imaginary",
    }
}

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Good => "good",
        Verdict::Ugly => "ugly",
        Verdict::Bad => "bad",
    }
}

fn run_roots(t: &GaugeTheory, stamp: InputStamp, bound: Option<&str>) -> Result<ExitCode, String> {
    let (quiver, v, _) = t.as_quiver("roots").map_err(|e| e.to_string())?;
    let cartan = cartan_matrix(quiver);
    let table: RootTable = match classify_graph(quiver).map_err(|e| e.to_string())? {
        GraphClass::Finite => positive_roots_finite(&cartan).map_err(|e| e.to_string())?,
        GraphClass::Affine { .. } => {
            let b = match bound {
                Some(text) => parse_bound(text, quiver.vertex_ids())?,
                None if !v.is_zero() => v.clone(),
                None => {
                    return Err(
                        "affine root tables need --bound (or a nonzero v in the theory file)"
                            .to_string(),
                    )
                }
            };
            positive_roots_bounded(&cartan, &b).map_err(|e| e.to_string())?
        }
        GraphClass::Indefinite => {
            return Err("root tables require a finite or affine quiver".to_string())
        }
    };
    print_tsv_header("roots", &stamp);
    println!("root\ttag\theight");
    for (root, tag) in &table.roots {
        let body: Vec<String> = root.0.iter().map(|x| x.to_string()).collect();
        println!("{}\t{}\t{}", body.join(","), tag_str(*tag), height(root));
    }
    Ok(ExitCode::SUCCESS)
}

fn run_ci(
    t: &GaugeTheory,
    stamp: InputStamp,
    pool: PoolArg,
    limits: &Limits,
) -> Result<ExitCode, String> {
    let (quiver, _, w) = t.as_quiver("ci").map_err(|e| e.to_string())?;
    let framed = !w.is_zero();
    let report = if framed {
        ci_check_framed_with(t, limits).map_err(|e| e.to_string())?
    } else {
        ci_check_unframed_with(t, pool.pool(), limits).map_err(|e| e.to_string())?
    };
    let fast_path = if framed {
        match classify_graph(quiver).map_err(|e| e.to_string())? {
            GraphClass::Finite => ci_fast_path_finite(t).ok(),
            GraphClass::Affine { .. } => ci_fast_path_affine(t).ok(),
            GraphClass::Indefinite => None,
        }
    } else {
        None
    };
    let fast_path_agrees = fast_path.as_ref().map(|f| f.is_ci == report.is_ci);
    let payload = CiPayload {
        mode: if framed { "framed" } else { "unframed" },
        report,
        fast_path,
        fast_path_agrees,
    };
    print_report("ci", stamp, payload)?;
    Ok(ExitCode::SUCCESS)
}

fn run_strata(
    t: &GaugeTheory,
    stamp: InputStamp,
    dot: Option<DotSide>,
    limits: &Limits,
) -> Result<ExitCode, String> {
    let (_, _, w) = t.as_quiver("strata").map_err(|e| e.to_string())?;
    let (family, map, coulomb, higgs) = if w.is_zero() {
        let coulomb = strata_affine_unframed_with(t, limits).map_err(|e| e.to_string())?;
        let higgs = strata_affine_unframed_higgs_with(t, limits).map_err(|e| e.to_string())?;
        ("affine-unframed", MapKind::Transpose, coulomb, higgs)
    } else {
        let (coulomb, higgs) = strata_framed_finite_with(t, limits).map_err(|e| e.to_string())?;
        ("framed-finite", MapKind::Identity, coulomb, higgs)
    };
    if let Some(side) = dot {
        let (poset, name) = match side {
            DotSide::Coulomb => (&coulomb, "coulomb"),
            DotSide::Higgs => (&higgs, "higgs"),
        };
        print!("{}", poset_dot(poset, name));
        return Ok(ExitCode::SUCCESS);
    }
    let bijection =
        check_order_reversing_bijection(&coulomb, &higgs, map).map_err(|e| e.to_string())?;
    let payload =
        StrataPayload { family, map: map.as_str(), coulomb, higgs, bijection };
    print_report("strata", stamp, payload)?;
    Ok(ExitCode::SUCCESS)
}

fn run_hilbert(
    t: &GaugeTheory,
    stamp: InputStamp,
    cutoff: u32,
    expect: Option<&str>,
    radius: Option<i64>,
    limits: &Limits,
) -> Result<ExitCode, String> {
    // Validate the comparison literal before computing anything, so a bad
    // literal is a usage error rather than a check failure.
    let oracle = match expect {
        Some(text) => {
            let spec = RationalSeriesSpec::parse(text).map_err(|e| e.to_string())?;
            Some((text, expand_rational(&spec, cutoff).map_err(|e| e.to_string())?))
        }
        None => None,
    };
    let report: SeriesReport = match radius {
        Some(r) => monopole_series_uncertified(t, cutoff, r, limits).map_err(|e| e.to_string())?,
        None => monopole_series_with(t, cutoff, limits).map_err(|e| e.to_string())?,
    };
    print_tsv_header("hilbert", &stamp);
    println!("# verdict: {}", report.verdict.map_or("none", verdict_str));
    println!("# scan-radius: {}", report.scan_radius);
    println!("# certified: {}", report.certified);
    println!("degree\tcoefficient");
    for (d, c) in report.series.coeffs.iter().enumerate() {
        println!("{d}\t{c}");
    }
    if let Some((text, series)) = oracle {
        if series != report.series {
            let diff = series
                .coeffs
                .iter()
                .zip(&report.series.coeffs)
                .position(|(a, b)| a != b)
                .unwrap_or(0);
            eprintln!(
                "mismatch with {text} at degree {diff}: computed {}, expected {}",
                report.series.coeff(diff as u32),
                series.coeff(diff as u32)
            );
            return Ok(ExitCode::from(1));
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// Stable digest of a fixture directory: sha256 over the sorted list of
/// `name:sha256(file)` lines for the `.json` files it contains.
fn fixtures_digest(dir: &Path) -> Result<String, String> {
    let mut entries: Vec<(String, String)> = Vec::new();
    let listing =
        fs::read_dir(dir).map_err(|e| format!("cannot read {}: {e}", dir.display()))?;
    for entry in listing {
        let entry = entry.map_err(|e| e.to_string())?;
        let name = entry.file_name().to_string_lossy().into_owned();
        if !name.ends_with(".json") {
            continue;
        }
        let bytes =
            fs::read(entry.path()).map_err(|e| format!("cannot read {name}: {e}"))?;
        entries.push((name, sha256_hex(&bytes)));
    }
    entries.sort();
    let combined: String =
        entries.iter().map(|(n, h)| format!("{n}:{h}\n")).collect();
    Ok(sha256_hex(combined.as_bytes()))
}

fn verdict_line(c: &Classification) -> String {
    match (c.verdict, c.min_value) {
        (Verdict::Bad, _) => "bad".to_string(),
        (v, Some(m)) => format!("{} min {m}", verdict_str(v)),
        (v, None) => format!("{} (trivial lattice)", verdict_str(v)),
    }
}

fn ci_str(is_ci: bool) -> &'static str {
    if is_ci {
        "ci"
    } else {
        "not ci"
    }
}

fn run_verify(
    fixtures: &Path,
    archive: Option<&Path>,
    record_open_cases: bool,
    limits: &Limits,
) -> Result<ExitCode, String> {
    if !fixtures.is_dir() {
        return Err(format!("fixture directory {} not found", fixtures.display()));
    }
    let load = |name: &str| -> Result<GaugeTheory, String> {
        let path = fixtures.join(name);
        let text = fs::read_to_string(&path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        parse_theory(&text).map_err(|e| e.to_string())
    };
    let classify_line = |name: &str| -> Result<String, String> {
        let t = load(name)?;
        let c = classify_theory_with(&t, limits).map_err(|e| e.to_string())?;
        Ok(verdict_line(&c))
    };

    let mut checks: Vec<CheckRecord> = Vec::new();
    let mut check = |id: &'static str, expected: &str, result: Result<String, String>| {
        let (computed, status) = match result {
            Ok(c) => {
                let status = if c == expected { "pass" } else { "fail" };
                (c, status)
            }
            Err(e) => (format!("error: {e}"), "fail"),
        };
        checks.push(CheckRecord {
            check: id,
            computed,
            expected: expected.to_string(),
            status,
        });
    };

    check("finite-a2-v11", "ugly min 1", classify_line("a2_11.json"));
    check("finite-a2-v21", "bad", classify_line("a2_21.json"));
    check("finite-d4-highest-root", "ugly min 1", classify_line("d4_1211.json"));
    check("affine-a1-delta", "good min 2", classify_line("affine_a1_delta.json"));
    check("affine-a1-2delta", "bad", classify_line("affine_a1_2delta.json"));
    check("affine-a2-delta", "good min 2", classify_line("affine_a2_delta.json"));

    check("rank-one-ladder", "bad,bad,bad,good:2,good:4,good:6,good:8", {
        let mut parts = Vec::new();
        let mut err = None;
        for n in 0..=6u32 {
            match classify_theory_with(&GaugeTheory::sl2(n), limits) {
                Ok(c) => parts.push(match c.verdict {
                    Verdict::Bad => "bad".to_string(),
                    v => format!("{}:{}", verdict_str(v), c.min_value.unwrap_or(0)),
                }),
                Err(e) => {
                    err = Some(e.to_string());
                    break;
                }
            }
        }
        match err {
            Some(e) => Err(e),
            None => Ok(parts.join(",")),
        }
    });

    check("framed-a3-dominance", "good, w-Cv dominant, ci", (|| {
        let t = load("a3_111_w101.json")?;
        let c = classify_theory_with(&t, limits).map_err(|e| e.to_string())?;
        let (quiver, v, w) = t.as_quiver("verify").map_err(|e| e.to_string())?;
        let cv = cartan_matrix(quiver).apply(&v.as_i64());
        let u: Vec<i64> = w.as_i64().iter().zip(&cv).map(|(a, b)| a - b).collect();
        let ci = ci_check_framed_with(&t, limits).map_err(|e| e.to_string())?;
        Ok(format!(
            "{}, w-Cv {}, {}",
            verdict_str(c.verdict),
            if is_dominant(&u) { "dominant" } else { "not dominant" },
            ci_str(ci.is_ci)
        ))
    })());

    check("ci-unframed-a2", "v=(1,1) ci, v=(2,1) not ci", (|| {
        let r1 = ci_check_unframed_with(
            &load("a2_11.json")?,
            DecompositionPool::PositiveRoots,
            limits,
        )
        .map_err(|e| e.to_string())?;
        let r2 = ci_check_unframed_with(
            &load("a2_21.json")?,
            DecompositionPool::PositiveRoots,
            limits,
        )
        .map_err(|e| e.to_string())?;
        Ok(format!("v=(1,1) {}, v=(2,1) {}", ci_str(r1.is_ci), ci_str(r2.is_ci)))
    })());

    check("ci-affine-delta", "delta ci, 2delta not ci", (|| {
        let r1 = ci_check_unframed_with(
            &load("affine_a1_delta.json")?,
            DecompositionPool::PositiveRoots,
            limits,
        )
        .map_err(|e| e.to_string())?;
        let r2 = ci_check_unframed_with(
            &load("affine_a1_2delta.json")?,
            DecompositionPool::PositiveRoots,
            limits,
        )
        .map_err(|e| e.to_string())?;
        Ok(format!("delta {}, 2delta {}", ci_str(r1.is_ci), ci_str(r2.is_ci)))
    })());

    check("jordan-v2-strata", "[2] [1,1]", (|| {
        let t = load("jordan_v2.json")?;
        let p = strata_affine_unframed_with(&t, limits).map_err(|e| e.to_string())?;
        let names: Vec<String> = p.elements.iter().map(|e| e.to_string()).collect();
        Ok(names.join(" "))
    })());

    check(
        "framed-a1-bijection",
        "order_reversing=true labels_match=true",
        (|| {
            let t = load("a1_v1_w2.json")?;
            let (c, h) = strata_framed_finite_with(&t, limits).map_err(|e| e.to_string())?;
            let b = check_order_reversing_bijection(&c, &h, MapKind::Identity)
                .map_err(|e| e.to_string())?;
            Ok(format!(
                "order_reversing={} labels_match={}",
                b.is_order_reversing, b.labels_match
            ))
        })(),
    );

    check("affine-a1-2delta-transpose", "labels_match=false", (|| {
        let t = load("affine_a1_2delta.json")?;
        let c = strata_affine_unframed_with(&t, limits).map_err(|e| e.to_string())?;
        let h = strata_affine_unframed_higgs_with(&t, limits).map_err(|e| e.to_string())?;
        let b = check_order_reversing_bijection(&c, &h, MapKind::Transpose)
            .map_err(|e| e.to_string())?;
        Ok(format!("labels_match={}", b.labels_match))
    })());

    check(
        "surface-n2-singularities",
        "singular (-1,0,0) (1,0,0); strata 3",
        (|| {
            let points = surface_singular_points(2);
            let record = surface_record(2);
            let body: Vec<String> =
                points.iter().map(|(x, y, z)| format!("({x},{y},{z})")).collect();
            Ok(format!("singular {}; strata {}", body.join(" "), record.strata_count))
        })(),
    );

    check("surface-quasi-homogeneity", "13/13 quasi-homogeneous", (|| {
        let good = (0..=12u32).filter(|&n| surface_record(n).quasi_homogeneous).count();
        Ok(format!("{good}/13 quasi-homogeneous"))
    })());

    let hilbert_line = |name: &str, cutoff: u32, expect: &str| -> Result<String, String> {
        let t = load(name)?;
        let report = monopole_series_with(&t, cutoff, limits).map_err(|e| e.to_string())?;
        let spec = RationalSeriesSpec::parse(expect).map_err(|e| e.to_string())?;
        let oracle = expand_rational(&spec, cutoff).map_err(|e| e.to_string())?;
        if report.series == oracle {
            Ok(format!("matches {expect} through degree {cutoff}"))
        } else {
            Ok(format!("differs from {expect}"))
        }
    };
    check(
        "hilbert-u1-w1",
        "matches 1/(1-t)^2 through degree 12",
        hilbert_line("u1_w1.json", 12, "1/(1-t)^2"),
    );
    check(
        "hilbert-u1-w3",
        "matches (1+t^3)/((1-t^2)(1-t^3)) through degree 8",
        hilbert_line("u1_w3.json", 8, "(1+t^3)/((1-t^2)(1-t^3))"),
    );
    check(
        "hilbert-sl2-n4",
        "matches (1+t^6)/(1-t^4)^2 through degree 8",
        hilbert_line("sl2_n4.json", 8, "(1+t^6)/(1-t^4)^2"),
    );

    if record_open_cases {
        let outcome = (|| -> Result<String, String> {
            let t = load("e6_highest_root.json")?;
            // Try the chamber certificate with a tight cap so an over-budget
            // fan fails fast, then fall back to a small direct scan. The
            // scan's minimum is an upper bound for the true minimum, so a
            // value <= 1 already rules out the good verdict.
            let tight = Limits {
                max_chambers: limits.max_chambers.min(2_000),
                ..limits.clone()
            };
            match classify_theory_with(&t, &tight) {
                Ok(c) => Ok(format!("classified: {}", verdict_line(&c))),
                Err(Error::Budget { .. }) | Err(Error::DimensionLimit { .. }) => {
                    match brute_force_min_with(&t, 1, limits).map_err(|e| e.to_string())? {
                        Some((value, _)) => Ok(format!(
                            "chamber certificate over budget; scan radius 1 found min {value}{}",
                            if value <= 1 { " (rules out good)" } else { "" }
                        )),
                        None => Ok("chamber certificate over budget; empty scan".to_string()),
                    }
                }
                Err(e) => Err(e.to_string()),
            }
        })();
        let computed = match outcome {
            Ok(c) => c,
            Err(e) => format!("error: {e}"),
        };
        checks.push(CheckRecord {
            check: "e6-highest-root",
            computed,
            expected: "ugly or bad (recorded, not asserted)".to_string(),
            status: "recorded",
        });
    }

    let passed = checks.iter().filter(|c| c.status == "pass").count();
    let failed = checks.iter().filter(|c| c.status == "fail").count();
    let recorded = checks.iter().filter(|c| c.status == "recorded").count();
    let overall = if failed == 0 { "pass" } else { "fail" };

    let digest = fixtures_digest(fixtures)?;
    println!("# command: verify-paper");
    println!("# fixtures: {}", fixtures.display());
    println!("# fixtures-sha256: {digest}");
    println!("# conventions: lattice=own grading=2delta");
    println!("# version: {VERSION}");
    println!("check\tcomputed\texpected\tstatus");
    for c in &checks {
        println!("{}\t{}\t{}\t{}", c.check, c.computed, c.expected, c.status);
    }
    println!("# overall: {overall} ({passed} pass, {failed} fail, {recorded} recorded)");

    if let Some(path) = archive {
        let report = Report {
            command: "verify-paper",
            input: InputStamp {
                path: Some(fixtures.display().to_string()),
                literal: None,
                sha256: digest,
            },
            conventions: CONVENTIONS,
            version: VERSION,
            payload: VerifySummary { checks, passed, failed, recorded, overall },
        };
        let text = serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?;
        fs::write(path, text + "\n")
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }

    Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
