//! Batch command-line front end. [`run`] renders a command to a string and an
//! exit code so that it can be driven without spawning a process.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use crate::curve::{CurveError, VariableChange, WeierstrassCurve};
use crate::fields::{Field, FieldElement, FieldError};
use crate::identities::{
    check_exact_suite, check_randomized_suite, IdentityError, IdentityReport, Status, DEFAULT_SEED,
};
use crate::points::{Point, PointError};
use crate::scan::{group_law_scan, GroupLawReport, Selection};

pub const SCHEMA_VERSION: u32 = 1;

/// Modulus of the randomized suite run by `verify`.
pub const VERIFY_PRIME: u64 = (1 << 31) - 1;

#[derive(Debug, Parser)]
#[command(name = "weierstrass", version, about = "Weierstrass curves over finite fields and the rationals")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    /// `q(p)`, `q(p^k[,m=c0,...,ck])` or `rational`
    #[arg(long)]
    pub field: String,
    /// Coefficients `a1,a2,a3,a4,a6`
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// b-invariants, discriminant and ellipticity
    Invariants(CurveArgs),
    /// Every nonsingular point over a finite field
    Points(CurveArgs),
    /// Order and invariant factors of the point group
    Group(CurveArgs),
    /// P + Q
    Add {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
    },
    /// n * P
    Smul {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(short = 'n', allow_negative_numbers = true)]
        n: i64,
    },
    /// -P
    Neg {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, allow_hyphen_values = true)]
        p: String,
    },
    /// Apply the variable change (u, r, s, t), optionally mapping a point
    Change {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        u: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        r: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        s: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        t: String,
        #[arg(long, allow_hyphen_values = true)]
        p: Option<String>,
    },
    /// Exact and randomized identity suites plus the group-law scan over GF(2..5)
    Verify {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
    },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("domain error: {0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Domain(_) => 3,
        }
    }
}

impl From<FieldError> for CliError {
    fn from(e: FieldError) -> Self {
        match e {
            FieldError::InfiniteField | FieldError::TooLargeToEnumerate | FieldError::DivisionByZero => {
                CliError::Domain(e.to_string())
            }
            _ => CliError::Parse(e.to_string()),
        }
    }
}

impl From<CurveError> for CliError {
    fn from(e: CurveError) -> Self {
        match e {
            CurveError::Field(f) => f.into(),
            CurveError::ZeroScale => CliError::Domain(e.to_string()),
            CurveError::FieldMismatch(..) => CliError::Parse(e.to_string()),
        }
    }
}

impl From<PointError> for CliError {
    fn from(e: PointError) -> Self {
        match e {
            PointError::Field(f) => f.into(),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<IdentityError> for CliError {
    fn from(e: IdentityError) -> Self {
        CliError::Domain(e.to_string())
    }
}

/// Rendered output and the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

fn load_curve(args: &CurveArgs) -> Result<WeierstrassCurve, CliError> {
    let field = Field::parse(&args.field)?;
    Ok(WeierstrassCurve::parse(field, &args.a)?)
}

fn element(field: Field, s: &str) -> Result<FieldElement, CliError> {
    Ok(field.parse_element(s)?)
}

fn curve_json(w: &WeierstrassCurve) -> Value {
    let a = w.coefficients();
    json!({
        "a1": a[0].to_string(),
        "a2": a[1].to_string(),
        "a3": a[2].to_string(),
        "a4": a[3].to_string(),
        "a6": a[4].to_string(),
    })
}

fn with_schema(mut v: Value) -> Value {
    v["schema"] = json!(SCHEMA_VERSION);
    v
}

fn render(format: Format, text: String, value: Value) -> String {
    match format {
        Format::Text => text,
        Format::Json => serde_json::to_string(&with_schema(value)).expect("serializable") + "\n",
    }
}

fn point_outcome(format: Format, p: &Point) -> Outcome {
    Outcome {
        stdout: render(format, format!("{p}\n"), json!({ "result": p })),
        code: 0,
    }
}

/// Converts a group-law scan into the report shape used by `verify`.
pub fn scan_report(r: &GroupLawReport) -> IdentityReport {
    let first = r.failures.first();
    IdentityReport {
        id: format!("group_law {}", r.field),
        status: if r.passed() { Status::Holds } else { Status::Fails },
        residual: first.map_or_else(|| "0".to_string(), |f| f.property.to_string()),
        sign: None,
        note: format!(
            "{} curves ({} singular), {} points, {} triples, {} failures",
            r.curves, r.singular_curves, r.points, r.triples, r.failure_count
        ),
        seed: None,
        trials: None,
        counterexample: first.map(|f| format!("curve [{}]: {}", f.curve, f.detail)),
    }
}

/// Runs every verification suite: exact identities, randomized identities
/// over `GF(2^31 - 1)`, and the exhaustive group-law scan over GF(2..5).
pub fn verify_reports(seed: u64, trials: u64) -> Result<Vec<IdentityReport>, CliError> {
    let mut reports = check_exact_suite();
    reports.extend(check_randomized_suite(VERIFY_PRIME, trials, seed)?);
    for q in 2..=5 {
        let field = Field::with_order(q)?;
        reports.push(scan_report(&group_law_scan(field, Selection::All)?));
    }
    Ok(reports)
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let format = cli.format;
    let ok = |stdout: String| Ok(Outcome { stdout, code: 0 });
    match &cli.command {
        Command::Invariants(args) => {
            let w = load_curve(args)?;
            let inv = w.invariants();
            let pairs = [
                ("b2", &inv.b2),
                ("b4", &inv.b4),
                ("b6", &inv.b6),
                ("b8", &inv.b8),
                ("delta", &inv.delta),
            ];
            let mut text = format!("field {}\ncurve {w}\n", w.field());
            let mut value = curve_json(&w);
            for (name, v) in pairs {
                text += &format!("{name} {v}\n");
                value[name] = json!(v.to_string());
            }
            text += &format!("is_elliptic {}\n", w.is_elliptic());
            value["is_elliptic"] = json!(w.is_elliptic());
            value["field"] = json!(w.field().to_string());
            ok(render(format, text, value))
        }
        Command::Points(args) => {
            let w = load_curve(args)?;
            let points = w.points()?;
            let text: String = points.iter().map(|p| format!("{p}\n")).collect();
            ok(render(format, text, json!({ "count": points.len(), "points": points })))
        }
        Command::Group(args) => {
            let w = load_curve(args)?;
            let g = w.group_structure()?;
            let (n1, n2) = g.invariant_factors;
            let text = format!("order {}\ninvariant_factors {n1} {n2}\ncyclic {}\n", g.order, g.is_cyclic());
            let value = json!({ "order": g.order, "invariant_factors": [n1, n2], "cyclic": g.is_cyclic() });
            ok(render(format, text, value))
        }
        Command::Add { curve, p, q } => {
            let w = load_curve(curve)?;
            let (p, q) = (Point::parse(&w, p)?, Point::parse(&w, q)?);
            Ok(point_outcome(format, &w.add(&p, &q)?))
        }
        Command::Smul { curve, p, n } => {
            let w = load_curve(curve)?;
            let p = Point::parse(&w, p)?;
            Ok(point_outcome(format, &w.smul(*n, &p)?))
        }
        Command::Neg { curve, p } => {
            let w = load_curve(curve)?;
            let p = Point::parse(&w, p)?;
            Ok(point_outcome(format, &w.neg(&p)?))
        }
        Command::Change { curve, u, r, s, t, p } => {
            let w = load_curve(curve)?;
            let f = w.field();
            let c = VariableChange::new(element(f, u)?, element(f, r)?, element(f, s)?, element(f, t)?)?;
            let moved = w.variable_change(&c);
            let mut text = format!("curve {moved}\ndelta {}\n", moved.discriminant());
            let mut value = json!({ "curve": curve_json(&moved), "delta": moved.discriminant().to_string() });
            if let Some(p) = p {
                let image = w.map_point_to(&moved, &c, &Point::parse(&w, p)?)?;
                text += &format!("point {image}\n");
                value["point"] = json!(image);
            }
            ok(render(format, text, value))
        }
        Command::Verify { seed, trials } => {
            let reports = verify_reports(*seed, *trials)?;
            let failed = reports.iter().any(|r| !r.passed());
            let text: String = reports
                .iter()
                .map(|r| {
                    let status = serde_json::to_value(r.status).expect("serializable");
                    format!("{} {} {}\n", r.id, status.as_str().unwrap_or_default(), r.note)
                })
                .collect();
            Ok(Outcome {
                stdout: render(format, text, json!({ "reports": reports })),
                code: i32::from(failed),
            })
        }
    }
}
