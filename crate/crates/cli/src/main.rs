mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use otk::construct::{make_half, make_maximal, make_totally_real, search_g_for_signature, HalfShift, MaximalFamilySpec};
use otk::geom::{verify_geometry, GeometryOptions};
use otk::lckrank::{classify_with, recheck, Case, ClassifyOptions, DEFAULT_PRIME_BUDGET};
use otk::parse::{parse_poly, parse_rational};
use otk::units::{is_unimodular_at_complex_place, positive_unit_rank, unit_search_bounded};
use otk::{Error, IntPoly, NumberField};

use report::*;

const EXIT_PARSE: u8 = 2;
const EXIT_GATE: u8 = 3;
const EXIT_UNDECIDED: u8 = 4;
const EXIT_CONSTRUCT: u8 = 5;
const EXIT_GEOMETRY: u8 = 6;

#[derive(Parser)]
#[command(name = "otk", version, about = "Number fields, units and LCK rank of Oeljeklaus-Toma manifolds")]
struct Cli {
    /// Compact JSON output (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,
    /// Indented JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Signature, first Betti number and LCK rank with a certificate.
    Analyze(AnalyzeArgs),
    /// Build a polynomial from one of the example families.
    #[command(subcommand)]
    Construct(ConstructCommand),
    /// Numerical checks of the potential, its Hessian and the group action.
    VerifyGeometry(GeometryArgs),
    /// Bounded unit search with positivity and unimodularity data.
    Units(UnitsArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Polynomial, as `x^4-2` or `[-2,0,0,0,1]`.
    #[arg(required_unless_present = "recheck")]
    poly: Option<String>,
    /// Cross-check the classification with a unit search of this coefficient bound.
    #[arg(long)]
    units_bound: Option<i64>,
    /// Also run the geometry suite.
    #[arg(long)]
    verify_geometry: bool,
    /// Re-validate the certificates of a saved analyze report instead.
    #[arg(long, value_name = "FILE")]
    recheck: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_PRIME_BUDGET)]
    prime_budget: u64,
    #[command(flatten)]
    geometry: GeometryFlags,
}

#[derive(Args, Clone)]
struct GeometryFlags {
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

#[derive(Args)]
struct GeometryArgs {
    poly: String,
    #[command(flatten)]
    flags: GeometryFlags,
    #[arg(long, default_value_t = 2)]
    units_bound: i64,
}

#[derive(Args)]
struct UnitsArgs {
    poly: String,
    #[arg(long, default_value_t = 3)]
    bound: i64,
}

#[derive(Subcommand)]
enum ConstructCommand {
    /// `-15 f1 + 10 f2 + 6 f3 + 30 g`, Galois group `S_{2n}`.
    Maximal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        f1: String,
        #[arg(long)]
        f2: String,
        #[arg(long)]
        f3: String,
        #[arg(long, default_value = "0")]
        g: String,
        /// Search g with coefficients up to this bound for signature (2n-2, 1).
        #[arg(long)]
        search_bound: Option<i64>,
    },
    /// `E(√(α - q))` over a totally real field E.
    Half {
        #[arg(long)]
        subfield: String,
        /// A rational, or `auto`.
        #[arg(long, default_value = "auto")]
        q: String,
    },
    /// A totally real field of degree n from cyclotomic periods.
    TotallyReal {
        #[arg(long)]
        n: usize,
    },
}

struct Failure {
    code: u8,
    error: Error,
}

fn fail(code: u8) -> impl Fn(Error) -> Failure {
    move |error| Failure { code, error }
}

fn gate_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => EXIT_PARSE,
        Error::Signature { .. } | Error::Reducible(_) => EXIT_GATE,
        _ => 1,
    }
}

fn open_field(src: &str) -> Result<Arc<NumberField>, Failure> {
    let poly = parse_poly(src).map_err(fail(EXIT_PARSE))?;
    field_of(poly)
}

fn field_of(poly: IntPoly) -> Result<Arc<NumberField>, Failure> {
    NumberField::new(poly).map_err(|e| Failure { code: gate_code(&e), error: e })
}

fn classify_opts(prime_budget: u64, seed: u64, units_bound: Option<i64>) -> ClassifyOptions {
    ClassifyOptions { prime_budget, seed, unit_bound: units_bound }
}

fn analyze_field(field: &Arc<NumberField>, opts: &ClassifyOptions) -> Result<AnalyzeReport, Failure> {
    let r = classify_with(field, opts).map_err(|e| Failure { code: gate_code(&e), error: e })?;
    Ok(AnalyzeReport::new(r, opts.seed))
}

struct Outcome {
    json: serde_json::Value,
    code: u8,
    note: Option<String>,
}

fn to_json<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn geometry_options(flags: &GeometryFlags, units_bound: i64) -> GeometryOptions {
    GeometryOptions { samples: flags.samples, seed: flags.seed, tol: flags.tol, units_bound }
}

fn geometry_note(g: &otk::geom::GeometryReport) -> Option<String> {
    g.worst().map(|w| {
        let at = w.worst_sample.map(|i| format!(" at sample {i}")).unwrap_or_default();
        format!("geometry check {} failed: {:e} > {:e}{at}", w.name, w.value, w.tolerance)
    })
}

fn run_analyze(a: &AnalyzeArgs) -> Result<Outcome, Failure> {
    if let Some(path) = &a.recheck {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure { code: 1, error: Error::InvalidInput(format!("{}: {e}", path.display())) })?;
        let saved: AnalyzeReport = serde_json::from_str(&text)
            .map_err(|e| Failure { code: EXIT_PARSE, error: Error::Parse(e.to_string()) })?;
        let result = recheck(&saved.rank_report());
        let kind = to_json(&saved.certificate)["kind"].as_str().unwrap_or_default().to_string();
        let out = RecheckReport {
            command: "recheck".into(),
            field: saved.field.clone(),
            certificate_kind: kind,
            valid: result.is_ok(),
            error: result.as_ref().err().map(|e| e.to_string()),
        };
        let code = if out.valid { 0 } else { 1 };
        return Ok(Outcome { json: to_json(&out), code, note: out.error.clone() });
    }
    let field = open_field(a.poly.as_deref().unwrap_or_default())?;
    let seed = a.geometry.seed;
    let mut report = analyze_field(&field, &classify_opts(a.prime_budget, seed, a.units_bound))?;
    let mut code = if report.case == Case::Undecided { EXIT_UNDECIDED } else { 0 };
    let mut note = (code != 0).then(|| "classification undecided".to_string());
    if a.verify_geometry {
        let opts = geometry_options(&a.geometry, a.units_bound.unwrap_or(2));
        let g = verify_geometry(&field, &opts).map_err(fail(1))?;
        if !g.passed && code == 0 {
            code = EXIT_GEOMETRY;
            note = geometry_note(&g);
        }
        report.geometry = Some(g);
    }
    Ok(Outcome { json: to_json(&report), code, note })
}

fn run_construct(c: &ConstructCommand) -> Result<Outcome, Failure> {
    let construction = match c {
        ConstructCommand::Maximal { n, f1, f2, f3, g, search_bound } => {
            let p = |s: &str| parse_poly(s).map_err(fail(EXIT_PARSE));
            let mut spec = MaximalFamilySpec { n: *n, f1: p(f1)?, f2: p(f2)?, f3: p(f3)?, g: p(g)? };
            if let Some(bound) = search_bound {
                let (g, _) = search_g_for_signature(&spec, *bound).map_err(fail(EXIT_CONSTRUCT))?.ok_or_else(|| {
                    Failure {
                        code: EXIT_CONSTRUCT,
                        error: Error::Construct(format!("no g with coefficients up to {bound} gives one complex place")),
                    }
                })?;
                spec.g = g;
            }
            Construction::Maximal(make_maximal(&spec).map_err(fail(EXIT_CONSTRUCT))?)
        }
        ConstructCommand::Half { subfield, q } => {
            let e = parse_poly(subfield).map_err(fail(EXIT_PARSE))?;
            let shift = if q == "auto" {
                HalfShift::Auto
            } else {
                HalfShift::Value(parse_rational(q).map_err(fail(EXIT_PARSE))?)
            };
            Construction::Half(make_half(&e, shift).map_err(fail(EXIT_CONSTRUCT))?)
        }
        ConstructCommand::TotallyReal { n } => {
            Construction::TotallyReal(make_totally_real(*n).map_err(fail(EXIT_CONSTRUCT))?)
        }
    };
    let poly = match &construction {
        Construction::Maximal(m) => m.poly.clone(),
        Construction::Half(h) => h.poly.clone(),
        Construction::TotallyReal(t) => t.poly.clone(),
    };
    let field = field_of(poly.clone()).map_err(|f| Failure { code: EXIT_CONSTRUCT, error: f.error })?;
    let sig = field.signature();
    let (analysis, skipped) = if sig.s >= 1 && sig.t == 1 {
        (Some(analyze_field(&field, &ClassifyOptions::default())?), None)
    } else {
        (None, Some(format!("signature ({}, {}) has no single complex place", sig.s, sig.t)))
    };
    let code = match &analysis {
        Some(a) if a.case == Case::Undecided => EXIT_UNDECIDED,
        _ => 0,
    };
    let out = ConstructReport {
        command: "construct".into(),
        field: FieldInfo::new(&poly),
        signature: sig,
        construction,
        analysis,
        analysis_skipped: skipped,
    };
    Ok(Outcome { json: to_json(&out), code, note: None })
}

fn run_geometry(a: &GeometryArgs) -> Result<Outcome, Failure> {
    let field = open_field(&a.poly)?;
    let g = verify_geometry(&field, &geometry_options(&a.flags, a.units_bound))
        .map_err(|e| Failure { code: gate_code(&e), error: e })?;
    let code = if g.passed { 0 } else { EXIT_GEOMETRY };
    Ok(Outcome { json: to_json(&g), code, note: geometry_note(&g) })
}

fn run_units(a: &UnitsArgs) -> Result<Outcome, Failure> {
    let field = open_field(&a.poly)?;
    let sig = field.signature();
    let found = unit_search_bounded(&field, a.bound).map_err(fail(1))?;
    let mut units = Vec::with_capacity(found.len());
    for u in &found {
        let unimodular = if sig.t == 1 && !u.is_plus_minus_one() {
            let tp = u.totally_positive_version().map_err(fail(1))?;
            Some(is_unimodular_at_complex_place(&tp).map_err(fail(1))?)
        } else {
            None
        };
        units.push(UnitEntry { unit: u.into(), text: u.element.to_string(), unimodular });
    }
    let (exhibited, certified) = if sig.s >= 1 {
        let r = positive_unit_rank(&field, a.bound).map_err(fail(1))?;
        (r.exhibited.len(), r.exhibited.len() == r.theoretical)
    } else {
        (0, false)
    };
    let out = UnitsReport {
        command: "units".into(),
        field: FieldInfo::new(field.poly()),
        signature: sig,
        bound: a.bound,
        units,
        unit_rank: (sig.s + sig.t).saturating_sub(1),
        positive_units_exhibited: exhibited,
        positive_rank_certified: certified,
    };
    Ok(Outcome { json: to_json(&out), code: 0, note: None })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Analyze(_) => "analyze",
        Command::Construct(_) => "construct",
        Command::VerifyGeometry(_) => "verify-geometry",
        Command::Units(_) => "units",
    }
}

fn print(v: &serde_json::Value, pretty: bool) {
    let text = if pretty { serde_json::to_string_pretty(v) } else { serde_json::to_string(v) };
    println!("{}", text.expect("JSON values serialize"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("OTK_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // a second initialisation only fails if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let result = match &cli.command {
        Command::Analyze(a) => run_analyze(a),
        Command::Construct(c) => run_construct(c),
        Command::VerifyGeometry(g) => run_geometry(g),
        Command::Units(u) => run_units(u),
    };
    match result {
        Ok(out) => {
            print(&out.json, cli.pretty);
            if let Some(n) = out.note {
                eprintln!("otk: {n}");
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            let signature = match &f.error {
                Error::Signature { s, t, .. } => Some(otk::realroots::Signature { s: *s, t: *t }),
                _ => None,
            };
            let err = ErrorReport { command: command_name(&cli.command).into(), error: f.error.to_string(), signature };
            print(&to_json(&err), cli.pretty);
            eprintln!("otk: {}", f.error);
            ExitCode::from(f.code)
        }
    }
}
