use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use tricav_core::entanglement::{monogamy_chain, LinkStatus, NEGATIVITY_CLAMP, ZERO_ENTANGLEMENT};
use tricav_core::esd::{boundary_curve, esd_time, gghz_esd_time};
use tricav_core::roots::BISECT_TOL;
use tricav_core::sweep::{surface, surface_oracle, SweepConfig, SweepFamily};
use tricav_core::verify::{landmarks, run_suite, CheckResult, Comparison, Outcome, Suite};
use tricav_core::{BoundaryKind, Error};

const USAGE: u8 = 2;
const FAILED: u8 = 1;

#[derive(Parser)]
#[command(
    name = "tricav",
    version,
    about = "Entanglement dynamics of three dissipating cavity qubits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Negativity over a (parameter, kt) grid
    Surface(SurfaceArgs),
    /// Sample a sudden-death boundary curve
    Boundary(BoundaryArgs),
    /// Run verification suites
    Verify(VerifyArgs),
    /// Compute the sudden-death landmarks and compare with reference values
    Landmarks(OutputArgs),
    /// Time of cavity entanglement sudden death
    EsdTime(EsdTimeArgs),
    /// Evaluate the monogamy chain at one point
    Monogamy(MonogamyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Mixed,
    Gghz,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Lambda5,
    Lambda7,
    Gghz,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Closedform,
    Monogamy,
    Swap,
    Esb,
    Regions,
    Gghz,
    Boundaries,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SurfaceArgs {
    #[arg(long, value_enum, default_value = "mixed")]
    family: Family,
    #[arg(long, default_value_t = 0.0)]
    param_min: f64,
    #[arg(long, default_value_t = 1.0)]
    param_max: f64,
    #[arg(long, default_value_t = 11)]
    param_steps: usize,
    #[arg(long, default_value_t = 0.0)]
    kt_min: f64,
    #[arg(long, default_value_t = 3.0)]
    kt_max: f64,
    #[arg(long, default_value_t = 31)]
    kt_steps: usize,
    /// Recompute every cell from the explicit state and compare
    #[arg(long)]
    oracle: bool,
    /// Allowed closed-form/oracle difference
    #[arg(long, default_value_t = 1e-10)]
    tolerance: f64,
    #[arg(long)]
    workers: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct BoundaryArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long, default_value_t = 0.1)]
    kt_min: f64,
    #[arg(long, default_value_t = 4.0)]
    kt_max: f64,
    #[arg(long, default_value_t = 40)]
    kt_steps: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum, default_value = "all")]
    suite: SuiteArg,
    /// Replace every check tolerance of the suite
    #[arg(long)]
    tolerance: Option<f64>,
    #[arg(long)]
    workers: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
#[command(group(ArgGroup::new("family").required(true).args(["p", "a"])))]
struct EsdTimeArgs {
    /// GHZ weight of the GHZ/W mixture
    #[arg(long)]
    p: Option<f64>,
    /// |000> amplitude of the generalized GHZ state
    #[arg(long)]
    a: Option<f64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct MonogamyArgs {
    #[arg(long)]
    p: f64,
    #[arg(long)]
    kt: f64,
    #[arg(long, default_value_t = 1e-10)]
    tolerance: f64,
    #[command(flatten)]
    output: OutputArgs,
}

/// Command failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Domain { .. } | Error::InvalidConfig(_) | Error::NonFinite => USAGE,
            _ => FAILED,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            code: FAILED,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Surface(a) => cmd_surface(a),
        Command::Boundary(a) => cmd_boundary(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Landmarks(a) => cmd_landmarks(a),
        Command::EsdTime(a) => cmd_esd_time(a),
        Command::Monogamy(a) => cmd_monogamy(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

/// Decimal rendering with 12 significant digits.
fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (11 - mag).clamp(0, 340) as usize;
    let s = format!("{x:.decimals$}");
    // rounding can carry into a new leading digit
    if s.trim_start_matches('-')
        .replace('.', "")
        .trim_start_matches('0')
        .len()
        > 12
        && decimals > 0
    {
        let d = decimals - 1;
        return format!("{x:.d$}");
    }
    s
}

fn meta(extra: Value) -> Value {
    let mut m = json!({
        "amplitudes": "xi = exp(-kt/2), chi = sqrt(1 - exp(-kt))",
        "mixture": "rho = p |GHZ><GHZ| + (1 - p) |W><W|",
        "gghz": "a |000> + b |111>, b = sqrt(1 - a^2)",
        "negativity": "trace norm of the partial transpose on c1 minus one, cut c1 | c2 c3",
        "qubit_order": "first label is the most significant bit",
        "tolerances": {
            "negativity_clamp": NEGATIVITY_CLAMP,
            "zero_entanglement": ZERO_ENTANGLEMENT,
            "root_bisection": BISECT_TOL,
        },
        "version": env!("CARGO_PKG_VERSION"),
    });
    if let (Value::Object(m), Value::Object(e)) = (&mut m, extra) {
        m.extend(e);
    }
    m
}

fn emit(out: &OutputArgs, text: String) -> io::Result<()> {
    match &out.out {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data serializes");
    s.push('\n');
    s
}

fn cmd_surface(a: SurfaceArgs) -> CmdResult {
    let cfg = SweepConfig {
        family: match a.family {
            Family::Mixed => SweepFamily::Mixed,
            Family::Gghz => SweepFamily::Gghz,
        },
        param_min: a.param_min,
        param_max: a.param_max,
        param_steps: a.param_steps,
        kt_min: a.kt_min,
        kt_max: a.kt_max,
        kt_steps: a.kt_steps,
    };
    if let Some(0) = a.workers {
        return Err(Failure {
            code: USAGE,
            message: "--workers must be at least 1".into(),
        });
    }
    let closed = surface(&cfg, a.workers)?;
    let mut code = 0;
    let rows = if a.oracle {
        let numeric = surface_oracle(&cfg, a.workers)?;
        let (dev, at) = closed
            .iter()
            .zip(&numeric)
            .map(|(c, n)| ((c.negativity - n.negativity).abs(), (c.param, c.kt)))
            .fold((0.0, (f64::NAN, f64::NAN)), |acc, x| {
                if x.0 > acc.0 {
                    x
                } else {
                    acc
                }
            });
        if dev > a.tolerance {
            eprintln!(
                "oracle mismatch {dev:.3e} > {:.0e} at param={}, kt={}",
                a.tolerance, at.0, at.1
            );
            code = FAILED;
        }
        numeric
    } else {
        closed
    };
    let text = match a.output.format {
        Format::Csv => {
            let mut s = String::from("param,kt,negativity\n");
            for r in &rows {
                s.push_str(&format!(
                    "{},{},{}\n",
                    sig12(r.param),
                    sig12(r.kt),
                    sig12(r.negativity)
                ));
            }
            s
        }
        Format::Json => to_json(&json!({
            "meta": meta(json!({
                "source": if a.oracle { "numeric" } else { "closed_form" },
                "config": cfg,
            })),
            "rows": rows,
        })),
    };
    emit(&a.output, text)?;
    Ok(code)
}

fn cmd_boundary(a: BoundaryArgs) -> CmdResult {
    let kind = match a.kind {
        Kind::Lambda5 => BoundaryKind::Lambda5,
        Kind::Lambda7 => BoundaryKind::Lambda7,
        Kind::Gghz => BoundaryKind::Gghz,
    };
    let curve = boundary_curve(kind, a.kt_min, a.kt_max, a.kt_steps)?;
    let text = match a.output.format {
        Format::Csv => {
            let mut s = String::from("kt,param\n");
            for &(kt, p) in &curve.samples {
                s.push_str(&format!("{},{}\n", sig12(kt), sig12(p)));
            }
            s
        }
        Format::Json => to_json(&json!({
            "meta": meta(json!({ "curve": kind.name() })),
            "samples": curve.samples.iter().map(|&(kt, p)| json!({"kt": kt, "param": p})).collect::<Vec<_>>(),
        })),
    };
    emit(&a.output, text)?;
    Ok(0)
}

fn describe(c: &CheckResult) -> String {
    let status = match c.outcome {
        Outcome::Pass => "PASS",
        Outcome::Fail => "FAIL",
        Outcome::NotEvaluated => return format!("SKIP {} (not evaluated)", c.name),
    };
    let what = match c.comparison {
        Comparison::AtMost => format!("max {:.3e} <= {:.1e}", c.value, c.tolerance),
        Comparison::SlackAtLeast => format!("min slack {:.3e} >= -{:.1e}", c.value, c.tolerance),
        Comparison::Above => format!("min {:.3e} > {:.1e}", c.value, c.tolerance),
    };
    let at = match (c.outcome, c.at) {
        (Outcome::Fail, Some((x, kt))) => format!(" at (param={x}, kt={kt})"),
        _ => String::new(),
    };
    format!("{status} {} {what}{at}", c.name)
}

fn cmd_verify(a: VerifyArgs) -> CmdResult {
    let suites: Vec<Suite> = match a.suite {
        SuiteArg::All => Suite::ALL.to_vec(),
        SuiteArg::Closedform => vec![Suite::ClosedForm],
        SuiteArg::Monogamy => vec![Suite::Monogamy],
        SuiteArg::Swap => vec![Suite::Swap],
        SuiteArg::Esb => vec![Suite::Esb],
        SuiteArg::Regions => vec![Suite::Regions],
        SuiteArg::Gghz => vec![Suite::Gghz],
        SuiteArg::Boundaries => vec![Suite::Boundaries],
    };
    if let Some(t) = a.tolerance {
        if !(t.is_finite() && t >= 0.0) {
            return Err(Failure {
                code: USAGE,
                message: format!("--tolerance must be finite and nonnegative, got {t}"),
            });
        }
    }
    let mut reports = Vec::new();
    for s in suites {
        reports.push(run_suite(s, a.tolerance, a.workers)?);
    }
    let ok = reports.iter().all(|r| r.passed());
    let text = match a.output.format {
        Format::Csv => {
            let mut s = String::new();
            for r in &reports {
                for c in &r.checks {
                    s.push_str(&format!("{}: {}\n", r.suite, describe(c)));
                }
            }
            s
        }
        Format::Json => {
            to_json(&json!({ "meta": meta(json!({})), "passed": ok, "suites": reports }))
        }
    };
    emit(&a.output, text)?;
    Ok(if ok { 0 } else { FAILED })
}

fn cmd_landmarks(a: OutputArgs) -> CmdResult {
    let table = landmarks()?;
    let ok = table.iter().all(|l| l.passed);
    let text = match a.format {
        Format::Csv => {
            let mut s = String::from("name,value,reference,tolerance,status\n");
            for l in &table {
                s.push_str(&format!(
                    "{},{},{},{},{}\n",
                    l.name,
                    sig12(l.value),
                    l.reference,
                    l.tolerance,
                    if l.passed { "PASS" } else { "FAIL" }
                ));
            }
            s
        }
        Format::Json => {
            to_json(&json!({ "meta": meta(json!({})), "passed": ok, "landmarks": table }))
        }
    };
    emit(&a, text)?;
    Ok(if ok { 0 } else { FAILED })
}

fn cmd_esd_time(a: EsdTimeArgs) -> CmdResult {
    let (family, param, t) = match (a.p, a.a) {
        (Some(p), _) => ("mixed", p, esd_time(p)?),
        (None, Some(x)) => ("gghz", x, gghz_esd_time(x)?),
        (None, None) => unreachable!("clap enforces the group"),
    };
    let text = match a.output.format {
        Format::Csv => format!(
            "family,param,esd_kt\n{family},{},{}\n",
            sig12(param),
            t.map(sig12).unwrap_or_else(|| "none".into())
        ),
        Format::Json => to_json(&json!({
            "meta": meta(json!({})),
            "family": family,
            "param": param,
            "esd_kt": t,
        })),
    };
    emit(&a.output, text)?;
    Ok(0)
}

fn cmd_monogamy(a: MonogamyArgs) -> CmdResult {
    let r = monogamy_chain(a.p, a.kt)?;
    let links = r.links(a.tolerance);
    let ok = !links.iter().any(|l| l.status == LinkStatus::Violated);
    let text = match a.output.format {
        Format::Csv => {
            let mut s = String::from("quantity,value\n");
            for (k, v) in [
                ("c_init_sq", r.c_init_sq),
                ("c_pair_sq", r.c_pair_sq),
                ("c_c1_sq", r.c_c1_sq),
                ("c_r1_sq", r.c_r1_sq),
                ("n_cav_sq", r.n_cav_sq),
                ("n_res_sq", r.n_res_sq),
            ] {
                s.push_str(&format!("{k},{}\n", sig12(v)));
            }
            for l in &links {
                let v = match (l.status, l.slack) {
                    (LinkStatus::NotEvaluated, _) | (_, None) => "not evaluated".to_string(),
                    (st, Some(x)) => format!("{x:.6e} {st:?}"),
                };
                s.push_str(&format!("{},{v}\n", l.name));
            }
            s
        }
        Format::Json => to_json(&json!({
            "meta": meta(json!({ "tolerance": a.tolerance })),
            "record": r,
            "links": links.iter().map(|l| json!({
                "name": l.name,
                "slack": l.slack,
                "status": l.status,
            })).collect::<Vec<_>>(),
        })),
    };
    emit(&a.output, text)?;
    Ok(if ok { 0 } else { FAILED })
}
