use std::ops::RangeInclusive;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use cohiggs::defcomplex::{schwarz_e2, split_e2, tangent_e2, DefError, E2Summary};
use cohiggs::eulercalc::{zero_locus, EulerError, ProjPoint, TwistedVectorField};
use cohiggs::higgsfields::{
    hitchin_det, is_nilpotent, is_stable_split, normalize, phi_wedge_phi, regularity_check,
    solve_integrable, HiggsError, SplitHiggs, Stability,
};
use cohiggs::polyring::{parse, quadratic_form_det};
use cohiggs::report::{Check, VerificationReport};
use cohiggs::sampling::rng;
use cohiggs::schwarz::{
    build_table_with, chern_coverage, conic_singular, table_row, SchwarzError, TableSheaf,
};
use cohiggs::sheafdim::{schwarz_chern, Route};
use cohiggs::verify::{
    random_simple_tangent_field, random_trivial_sum_field, random_twisted_sum_field, verify_all,
};

const EXIT_FAILED: u8 = 1;
const EXIT_ROUTES: u8 = 2;
const EXIT_NOT_INTEGRABLE: u8 = 3;
const EXIT_NOT_STABLE: u8 = 4;
const EXIT_PARSE: u8 = 5;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "cohiggs", version, about = "Exact checks for rank-2 co-Higgs bundles on the projective plane")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Subcommand)]
enum Command {
    /// Cohomology tables of End0 V_k by closed form, Kunneth chase and Riemann-Roch.
    Tables {
        #[arg(long, conflicts_with = "k_range")]
        k: Option<u64>,
        /// Inclusive range `a..b`.
        #[arg(long, value_parser = parse_range)]
        k_range: Option<RangeInclusive<u64>>,
        /// Comma-separated subset of closed, kunneth, rr.
        #[arg(long, default_value = "closed,kunneth,rr", value_parser = parse_routes)]
        routes: RouteList,
        #[arg(long, value_enum, default_value = "md")]
        format: Format,
    },
    /// Integrable fields on a split bundle with a given C.
    Solve {
        /// `split:m1,m2`
        #[arg(long, value_parser = parse_bundle)]
        bundle: (i64, i64),
        #[arg(long = "C")]
        c: String,
        #[arg(long = "A")]
        a: Option<String>,
        #[arg(long = "B")]
        b: Option<String>,
        #[arg(long, value_enum, default_value = "md")]
        format: Format,
    },
    /// First-order deformations of a sampled or Schwarzenberger co-Higgs bundle.
    H1 {
        /// split:0,-1, split:0,0, tangent or schwarzenberger.
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long)]
        k: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "md")]
        format: Format,
    },
    /// Chern classes of V_k and their normalization.
    Chern {
        #[arg(long, conflicts_with = "k_range")]
        k: Option<u64>,
        #[arg(long, value_parser = parse_range)]
        k_range: Option<RangeInclusive<u64>>,
        #[arg(long, value_enum, default_value = "md")]
        format: Format,
    },
    /// Whether a conic is singular.
    Conic {
        rho: String,
        #[arg(long, value_enum, default_value = "md")]
        format: Format,
    },
    /// Runs the whole acceptance suite.
    VerifyAll {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "md")]
        format: Format,
    },
}

#[derive(Clone)]
struct RouteList(Vec<Route>);

#[derive(Clone, Copy)]
enum Family {
    Split(i64, i64),
    Tangent,
    Schwarzenberger,
}

fn parse_range(s: &str) -> Result<RangeInclusive<u64>, String> {
    let (a, b) = s.split_once("..").ok_or("expected a..b")?;
    let a: u64 = a.trim().parse().map_err(|e| format!("{e}"))?;
    let b: u64 = b.trim().parse().map_err(|e| format!("{e}"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok(a..=b)
}

fn parse_routes(s: &str) -> Result<RouteList, String> {
    let routes = s
        .split(',')
        .map(|r| match r.trim() {
            "closed" | "closed-form" => Ok(Route::ClosedForm),
            "kunneth" | "kunneth-chase" => Ok(Route::KunnethChase),
            "rr" | "riemann-roch" => Ok(Route::RiemannRoch),
            other => Err(format!("unknown route {other:?}")),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RouteList(routes))
}

fn parse_bundle(s: &str) -> Result<(i64, i64), String> {
    let rest = s.strip_prefix("split:").ok_or("expected split:m1,m2")?;
    let (a, b) = rest.split_once(',').ok_or("expected split:m1,m2")?;
    Ok((a.trim().parse().map_err(|e| format!("{e}"))?, b.trim().parse().map_err(|e| format!("{e}"))?))
}

fn parse_family(s: &str) -> Result<Family, String> {
    match s {
        "tangent" => Ok(Family::Tangent),
        "schwarzenberger" => Ok(Family::Schwarzenberger),
        _ => match parse_bundle(s)? {
            b @ ((0, -1) | (0, 0)) => Ok(Family::Split(b.0, b.1)),
            (m1, m2) => Err(format!("split family must be split:0,-1 or split:0,0, found split:{m1},{m2}")),
        },
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl ToString) -> Self {
        Failure { code, message: message.to_string() }
    }
}

fn higgs_failure(e: HiggsError) -> Failure {
    let code = match e {
        HiggsError::NotIntegrable => EXIT_NOT_INTEGRABLE,
        HiggsError::NotStable { .. } | HiggsError::ZeroSection => EXIT_NOT_STABLE,
        HiggsError::TwistMismatch { .. } => EXIT_PARSE,
        _ => EXIT_FAILED,
    };
    Failure::new(code, e)
}

fn def_failure(e: DefError) -> Failure {
    let code = match e {
        DefError::NotIntegrable => EXIT_NOT_INTEGRABLE,
        DefError::NotStable(_) => EXIT_NOT_STABLE,
        DefError::Schwarz(SchwarzError::Domain { .. }) => EXIT_USAGE,
        _ => EXIT_FAILED,
    };
    Failure::new(code, e)
}

fn tfield(text: &str, twist: i64) -> Result<TwistedVectorField, Failure> {
    TwistedVectorField::parse(text, twist).map_err(|e: EulerError| Failure::new(EXIT_PARSE, e))
}

fn emit<T: Serialize>(format: Format, value: &T, text: impl FnOnce() -> String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).expect("serializable")),
        Format::Md => print!("{}", text()),
    }
}

fn k_values(k: Option<u64>, range: Option<RangeInclusive<u64>>, default: RangeInclusive<u64>) -> RangeInclusive<u64> {
    match (k, range) {
        (Some(k), _) => k..=k,
        (None, Some(r)) => r,
        (None, None) => default,
    }
}

fn cmd_tables(ks: RangeInclusive<u64>, routes: &[Route], format: Format) -> Result<(), Failure> {
    if *ks.start() < 3 || *ks.end() > 64 {
        return Err(Failure::new(EXIT_USAGE, format!("k must lie in [3, 64], got {}..{}", ks.start(), ks.end())));
    }
    if routes.is_empty() {
        return Err(Failure::new(EXIT_USAGE, "no routes selected"));
    }
    let mut checks = Vec::new();
    let mut tables = Vec::new();
    for k in ks {
        for s in TableSheaf::ROWS {
            let closed = table_row(k, s, &[Route::ClosedForm]).map(|r| format!("{:?}", r.dims));
            let expected = closed.unwrap_or_else(|e| e.to_string());
            for &r in routes {
                let computed = table_row(k, s, &[r]).map(|row| format!("{:?}", row.dims));
                checks.push(Check::compare(
                    format!("k{k:02}-{}-{}", s.label(), r.tag()),
                    "schwarzenberger-dimension-table",
                    r.tag(),
                    computed.unwrap_or_else(|e| e.to_string()),
                    &expected,
                ));
            }
        }
        if let Ok(t) = build_table_with(k, routes) {
            tables.push(t);
        }
    }
    let report = VerificationReport::new(0, checks);
    #[derive(Serialize)]
    struct Out<'a> {
        tables: &'a [cohiggs::schwarz::DimTable],
        report: &'a VerificationReport,
    }
    let routes_tag = routes.iter().map(|r| r.tag()).collect::<Vec<_>>().join(", ");
    emit(format, &Out { tables: &tables, report: &report }, || {
        let mut s = String::new();
        for t in &tables {
            s.push_str(&t.to_markdown());
            s.push('\n');
        }
        s.push_str(&format!("routes: {routes_tag}\n"));
        if report.passed() {
            s.push_str("all routes agree\n");
        } else {
            for c in report.checks.iter().filter(|c| !c.passed()) {
                s.push_str(&format!("DISAGREE {}: {} vs closed form {}\n", c.id, c.computed, c.expected));
            }
        }
        s
    });
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::new(EXIT_ROUTES, format!("route disagreement: {}", report.failing_ids().join(", "))))
    }
}

#[derive(Serialize)]
struct FieldReport {
    field: String,
    stability: String,
    witness: Option<String>,
    normal_form: Option<String>,
    normal_form_note: Option<String>,
    hitchin_det: String,
    nilpotent: bool,
    regularity_points_checked: usize,
    non_regular_points: Vec<String>,
}

#[derive(Serialize)]
struct SolveReport {
    bundle: (i64, i64),
    c: String,
    lambda_space: usize,
    mu_space: usize,
    a_solutions: usize,
    b_solutions: usize,
    multiplier_form: bool,
    field: Option<FieldReport>,
}

fn sample_points(c: &TwistedVectorField) -> Vec<ProjPoint> {
    let mut pts: Vec<ProjPoint> = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, -1, 2]]
        .iter()
        .map(|&p| ProjPoint::from_ints(p).expect("nonzero"))
        .collect();
    if let Ok(p) = zero_locus(c) {
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    pts
}

fn field_report(h: &SplitHiggs) -> Result<FieldReport, Failure> {
    if phi_wedge_phi(h).iter().flatten().any(|p| !p.is_zero()) {
        return Err(Failure::new(EXIT_NOT_INTEGRABLE, HiggsError::NotIntegrable));
    }
    let stab = is_stable_split(h);
    if stab.verdict == Stability::Unstable {
        return Err(Failure::new(
            EXIT_NOT_STABLE,
            HiggsError::NotStable { witness: stab.witness.unwrap_or_default() },
        ));
    }
    let (m1, m2) = h.bundle();
    let oriented = if m1 < m2 { h.swapped() } else { h.clone() };
    let (normal_form, normal_form_note) = match normalize(&oriented) {
        Ok(nf) => (Some(nf.to_string()), (m1 < m2).then(|| "summands swapped to put the larger first".into())),
        Err(e) => (None, Some(e.to_string())),
    };
    let reg = regularity_check(h, &sample_points(h.c()));
    Ok(FieldReport {
        field: h.to_string(),
        stability: format!("{:?}", stab.verdict),
        witness: stab.witness,
        normal_form,
        normal_form_note,
        hitchin_det: hitchin_det(h).to_string(),
        nilpotent: is_nilpotent(h),
        regularity_points_checked: reg.checked,
        non_regular_points: reg.non_regular.iter().map(ToString::to_string).collect(),
    })
}

fn cmd_solve(bundle: (i64, i64), c: &str, a: Option<&str>, b: Option<&str>, format: Format) -> Result<(), Failure> {
    let (m1, m2) = bundle;
    if (m1 - m2).abs() >= 2 {
        let w = format!("destabilizing O({}): T({}) has no sections", m1.max(m2), -(m1 - m2).abs());
        return Err(Failure::new(EXIT_NOT_STABLE, HiggsError::NotStable { witness: w }));
    }
    let c = tfield(c, m2 - m1)?;
    let fam = solve_integrable(&c, m1, m2).map_err(higgs_failure)?;
    let field = if a.is_some() || b.is_some() {
        let a = a.map_or(Ok(TwistedVectorField::zero(0)), |t| tfield(t, 0))?;
        let b = b.map_or(Ok(TwistedVectorField::zero(m1 - m2)), |t| tfield(t, m1 - m2))?;
        let h = SplitHiggs::new(m1, m2, a, b, c.clone()).map_err(higgs_failure)?;
        Some(field_report(&h)?)
    } else {
        None
    };
    let report = SolveReport {
        bundle,
        c: c.to_string(),
        lambda_space: fam.expected.0,
        mu_space: fam.expected.1,
        a_solutions: fam.a_solutions.len(),
        b_solutions: fam.b_solutions.len(),
        multiplier_form: fam.multiplier_form,
        field,
    };
    emit(format, &report, || {
        let mut s = format!(
            "bundle O({m1}) + O({m2})\nC = {}\nA-space {} (lambda in H0(O({}))), B-space {} (mu in H0(O({})))\n",
            report.c,
            report.a_solutions,
            m1 - m2,
            report.b_solutions,
            2 * (m1 - m2)
        );
        if !report.multiplier_form {
            s.push_str(&format!(
                "C vanishes on a curve: solution spaces exceed the multiplier dimensions ({}, {})\n",
                report.lambda_space, report.mu_space
            ));
        }
        if let Some(f) = &report.field {
            s.push_str(&format!("field {}\nstability {}", f.field, f.stability));
            if let Some(w) = &f.witness {
                s.push_str(&format!(" ({w})"));
            }
            s.push('\n');
            match (&f.normal_form, &f.normal_form_note) {
                (Some(nf), note) => {
                    s.push_str(&format!("normal form {nf}\n"));
                    if let Some(n) = note {
                        s.push_str(&format!("  {n}\n"));
                    }
                }
                (None, Some(n)) => s.push_str(&format!("no normal form: {n}\n")),
                (None, None) => {}
            }
            s.push_str(&format!("det = {}\nnilpotent {}\n", f.hitchin_det, f.nilpotent));
            s.push_str(&format!(
                "regularity: {} points checked, non-regular at [{}]\n",
                f.regularity_points_checked,
                f.non_regular_points.join(", ")
            ));
        }
        s
    });
    Ok(())
}

#[derive(Serialize)]
struct H1Report {
    family: String,
    seed: u64,
    field: String,
    summary: E2Summary,
}

fn cmd_h1(family: Family, k: Option<u64>, seed: u64, format: Format) -> Result<(), Failure> {
    let mut r = rng(seed);
    let (name, field, summary) = match family {
        Family::Split(0, -1) => {
            let h = random_twisted_sum_field(&mut r).0;
            ("split:0,-1".to_string(), h.to_string(), split_e2(&h))
        }
        Family::Split(..) => {
            let h = random_trivial_sum_field(&mut r);
            ("split:0,0".to_string(), h.to_string(), split_e2(&h))
        }
        Family::Tangent => {
            let t = random_simple_tangent_field(&mut r);
            let coords = t.coords().iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
            ("tangent".to_string(), format!("coefficients [{coords}]"), tangent_e2(&t))
        }
        Family::Schwarzenberger => {
            let k = k.ok_or_else(|| Failure::new(EXIT_USAGE, "--k is required for schwarzenberger"))?;
            (format!("schwarzenberger k = {k}"), "phi_0 ⊗ C".to_string(), schwarz_e2(k))
        }
    };
    let summary = summary.map_err(def_failure)?;
    let report = H1Report { family: name, seed, field, summary };
    emit(format, &report, || {
        let s = &report.summary;
        let mut out = format!(
            "{}\nfield {}\nE2^(1,0) = {}\nE2^(0,1) = {}\nrank d2 = {}\nh1 = {}\nledger:\n",
            report.family, report.field, s.e2_10, s.e2_01, s.d2_rank_on_01, s.h1
        );
        for l in &s.ledger {
            out.push_str(&format!("  {l}\n"));
        }
        out
    });
    Ok(())
}

#[derive(Serialize)]
struct ChernRow {
    k: u64,
    c1: i64,
    c2: i64,
    dual_c1: i64,
    normalized: cohiggs::schwarz::NormalizedChern,
}

fn cmd_chern(ks: RangeInclusive<u64>, format: Format) -> Result<(), Failure> {
    if *ks.end() > 64 {
        return Err(Failure::new(EXIT_USAGE, "k must be at most 64"));
    }
    let rows: Vec<ChernRow> = ks
        .map(|k| {
            let (v, d) = schwarz_chern(k);
            ChernRow { k, c1: v.c1, c2: v.c2, dual_c1: d.c1, normalized: chern_coverage(k) }
        })
        .collect();
    emit(format, &rows, || {
        let mut s = "| k | c1 | c2 | twist | normalized (c1, c2) | family | index |\n|---|---|---|---|---|---|---|\n".to_string();
        for r in &rows {
            let n = &r.normalized;
            s.push_str(&format!(
                "| {} | {} | {} | {} | ({}, {}) | {:?} | {} |\n",
                r.k, r.c1, r.c2, n.twist, n.c1, n.c2, n.family, n.family_index
            ));
        }
        s
    });
    Ok(())
}

fn cmd_conic(rho: &str, format: Format) -> Result<(), Failure> {
    let p = parse(rho).map_err(|e| Failure::new(EXIT_PARSE, e))?;
    let singular = conic_singular(&p).map_err(|e| Failure::new(EXIT_PARSE, e))?;
    #[derive(Serialize)]
    struct Out {
        conic: String,
        det: String,
        singular: bool,
    }
    let det = quadratic_form_det(&p).map(|d| d.to_string()).unwrap_or_default();
    let out = Out { conic: p.to_string(), det, singular };
    emit(format, &out, || {
        format!("{}: det {} ({})\n", out.conic, out.det, if singular { "singular" } else { "nonsingular" })
    });
    Ok(())
}

fn cmd_verify_all(seed: u64, format: Format) -> Result<(), Failure> {
    let report = verify_all(seed);
    emit(format, &report, || {
        let pass = report.checks.iter().filter(|c| c.passed()).count();
        format!("{}\n{pass} of {} checks pass\n", report.to_markdown(), report.checks.len())
    });
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::new(EXIT_FAILED, format!("failing checks: {}", report.failing_ids().join(", "))))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Tables { k, k_range, routes, format } => cmd_tables(k_values(k, k_range, 3..=12), &routes.0, format),
        Command::Solve { bundle, c, a, b, format } => cmd_solve(bundle, &c, a.as_deref(), b.as_deref(), format),
        Command::H1 { family, k, seed, format } => cmd_h1(family, k, seed, format),
        Command::Chern { k, k_range, format } => cmd_chern(k_values(k, k_range, 0..=12), format),
        Command::Conic { rho, format } => cmd_conic(&rho, format),
        Command::VerifyAll { seed, format } => cmd_verify_all(seed, format),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
