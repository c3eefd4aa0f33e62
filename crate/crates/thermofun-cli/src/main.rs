//! `thermofun` — command-line front end for the thermonuclear-function
//! library: single evaluations, parameter sweeps, a q-statistics demo table,
//! and the acceptance self-test.
//!
//! Exit codes: 0 ok, 2 no-convergence, 3 domain error, 4 cross-check
//! failure, 64 usage.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use rayon::prelude::*;

use thermofun::quad::QuadratureConfig;
use thermofun::thermo::{self, EvalMode, ThermoRequest};
use thermofun::{qstat, EvalError, EvalResult};

mod record;
mod sweep;

use record::{error_marker, fmt17, Params, Record, CSV_HEADER};
use sweep::{Axis, ParamSpec, SweepSpec};

const EXIT_OK: u8 = 0;
const EXIT_NOCONV: u8 = 2;
const EXIT_DOMAIN: u8 = 3;
const EXIT_CROSSCHECK: u8 = 4;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "thermofun", version, about = "Astrophysical thermonuclear functions: closed forms vs quadrature")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one family at a single parameter point
    Eval(EvalArgs),
    /// Evaluate a family over parameter ranges, streaming rows
    Sweep(SweepArgs),
    /// Compare the q-statistical rate with the nearest classical family
    Qdemo(QdemoArgs),
    /// Run the full acceptance battery (criteria 1-9)
    Selftest,
}

/// Shared parameter flags. For `kratzel` the `--z` flag carries the argument
/// x (the CSV schema has no x column; z is its slot).
#[derive(Args, Debug, Clone, Copy, Default)]
struct ParamFlags {
    #[arg(long)]
    z: Option<f64>,
    #[arg(long)]
    nu: Option<f64>,
    #[arg(long)]
    d: Option<f64>,
    #[arg(long)]
    t: Option<f64>,
    #[arg(long)]
    mu: Option<f64>,
    #[arg(long)]
    b: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    rho: Option<f64>,
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    q: Option<f64>,
}

#[derive(Args)]
struct EvalArgs {
    /// Function family: i1|i2|i3|i4|general|kratzel
    family: String,
    #[command(flatten)]
    params: ParamFlags,
    /// Evaluation route: closed|oracle|crosscheck
    #[arg(long, default_value = "closed")]
    mode: String,
    /// Relative tolerance for crosscheck mode
    #[arg(long, default_value_t = 1e-8)]
    rtol: f64,
    /// Output format: json|csv
    #[arg(long, default_value = "json")]
    format: String,
    /// Write output to a file instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Function family (may also come from the config file)
    family: Option<String>,
    /// Swept parameter, `name=start:stop:count[:lin|log]`; repeatable
    #[arg(long)]
    range: Vec<String>,
    #[command(flatten)]
    params: ParamFlags,
    /// Evaluation route: closed|oracle|crosscheck
    #[arg(long)]
    mode: Option<String>,
    /// Relative tolerance for crosscheck mode
    #[arg(long)]
    rtol: Option<f64>,
    /// Output format: csv|json (JSON-lines)
    #[arg(long)]
    format: Option<String>,
    /// Flat key=value config file; flags override its entries
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write output to a file instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct QdemoArgs {
    /// Entropic index
    #[arg(long)]
    q: f64,
    /// Exponent nu of the rate integrand
    #[arg(long, default_value_t = 2.0)]
    nu: f64,
    /// First z of the demo grid (must be positive)
    #[arg(long, default_value_t = 0.1)]
    z_start: f64,
    /// Last z of the demo grid
    #[arg(long, default_value_t = 2.0)]
    z_stop: f64,
    /// Number of grid points
    #[arg(long, default_value_t = 5)]
    count: usize,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version requests are not usage errors
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Eval(args) => cmd_eval(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Qdemo(args) => cmd_qdemo(args),
        Command::Selftest => cmd_selftest(),
    }
}

fn usage(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn exit_for(e: &EvalError) -> ExitCode {
    ExitCode::from(match e {
        EvalError::Domain(_) | EvalError::Pole { .. } => EXIT_DOMAIN,
        EvalError::CrossCheckFailed { .. } => EXIT_CROSSCHECK,
        _ => EXIT_NOCONV,
    })
}

fn parse_mode(mode: &str, rtol: f64) -> Result<EvalMode, String> {
    match mode {
        "closed" => Ok(EvalMode::ClosedForm),
        "oracle" => Ok(EvalMode::Oracle),
        "crosscheck" => Ok(EvalMode::CrossCheck(rtol)),
        other => Err(format!("mode '{other}' is not closed|oracle|crosscheck")),
    }
}

/// Builds the library request for a family from the filled parameter slots.
fn build_request(family: &str, p: &Params) -> Result<ThermoRequest, String> {
    fn need(family: &str, name: &str, v: Option<f64>) -> Result<f64, String> {
        v.ok_or_else(|| format!("family '{family}' requires --{name}"))
    }
    let c = |v: f64| Complex64::new(v, 0.0);
    match family {
        "i1" => Ok(ThermoRequest::I1 {
            z: need(family, "z", p.z)?,
            nu: need(family, "nu", p.nu)?,
        }),
        "i2" => Ok(ThermoRequest::I2 {
            z: need(family, "z", p.z)?,
            d: need(family, "d", p.d)?,
            nu: need(family, "nu", p.nu)?,
        }),
        "i3" => Ok(ThermoRequest::I3 {
            z: need(family, "z", p.z)?,
            t: need(family, "t", p.t)?,
            nu: need(family, "nu", p.nu)?,
            mu: p.mu.unwrap_or(0.5),
        }),
        "i4" => Ok(ThermoRequest::I4 {
            z: need(family, "z", p.z)?,
            delta: need(family, "delta", p.delta)?,
            b: need(family, "b", p.b)?,
            nu: need(family, "nu", p.nu)?,
        }),
        "general" => Ok(ThermoRequest::GeneralI {
            nu: c(need(family, "nu", p.nu)?),
            a: c(need(family, "a", p.a)?),
            z: c(need(family, "z", p.z)?),
            rho: need(family, "rho", p.rho)?,
            d: p.d,
        }),
        "kratzel" => Ok(ThermoRequest::Kratzel {
            nu: need(family, "nu", p.nu)?,
            rho: need(family, "rho", p.rho)?,
            x: need(family, "z", p.z)?,
        }),
        other => Err(format!("unknown family '{other}' (i1|i2|i3|i4|general|kratzel)")),
    }
}

fn flags_to_params(f: &ParamFlags) -> Params {
    Params {
        nu: f.nu,
        z: f.z,
        d: f.d,
        t: f.t,
        mu: f.mu,
        b: f.b,
        delta: f.delta,
        rho: f.rho,
        a: f.a,
        q: f.q,
    }
}

fn write_output(out: Option<&PathBuf>, text: &str) -> std::io::Result<()> {
    match out {
        Some(path) => fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

fn cmd_eval(args: EvalArgs) -> ExitCode {
    let params = flags_to_params(&args.params);
    let req = match build_request(&args.family, &params) {
        Ok(r) => r,
        Err(msg) => return usage(&msg),
    };
    let mode = match parse_mode(&args.mode, args.rtol) {
        Ok(m) => m,
        Err(msg) => return usage(&msg),
    };
    if !matches!(args.format.as_str(), "json" | "csv") {
        return usage(&format!("format '{}' is not json|csv", args.format));
    }
    let started = Instant::now();
    let evaluated = thermo::eval(&req, mode);
    let wall_ms = started.elapsed().as_secs_f64() * 1e3;
    let result = match evaluated {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_for(&e);
        }
    };
    let rec = Record {
        family: args.family.clone(),
        params,
        value: Some(result.re()),
        abs_err: Some(result.abs_error_estimate),
        method: result.method.to_string(),
        work: result.work,
        converged: result.converged,
    };
    let text = match args.format.as_str() {
        "csv" => format!("{CSV_HEADER}\n{}\n", rec.csv_row()),
        _ => format!("{}\n", rec.json_line(Some(wall_ms))),
    };
    if let Err(e) = write_output(args.out.as_ref(), &text) {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_NOCONV);
    }
    if result.converged {
        ExitCode::from(EXIT_OK)
    } else {
        ExitCode::from(EXIT_NOCONV)
    }
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

fn cmd_sweep(args: SweepArgs) -> ExitCode {
    let mut spec = SweepSpec {
        family: String::new(),
        params: Default::default(),
        mode: "closed".into(),
        rtol: 1e-8,
        format: "json".into(),
    };
    if let Some(path) = &args.config {
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => return usage(&format!("config {}: {e}", path.display())),
        };
        if let Err(msg) = sweep::apply_config(&mut spec, &text) {
            return usage(&msg);
        }
    }
    // flags override config entries
    if let Some(f) = &args.family {
        spec.family = f.clone();
    }
    if let Some(m) = &args.mode {
        spec.mode = m.clone();
    }
    if let Some(r) = args.rtol {
        spec.rtol = r;
    }
    if let Some(f) = &args.format {
        spec.format = f.clone();
    }
    let fixed = [
        ("nu", args.params.nu),
        ("z", args.params.z),
        ("d", args.params.d),
        ("t", args.params.t),
        ("mu", args.params.mu),
        ("b", args.params.b),
        ("delta", args.params.delta),
        ("rho", args.params.rho),
        ("a", args.params.a),
        ("q", args.params.q),
    ];
    for (name, v) in fixed {
        if let Some(v) = v {
            if let Err(msg) = spec.set_param(name, ParamSpec::Fixed(v)) {
                return usage(&msg);
            }
        }
    }
    for entry in &args.range {
        let Some((name, axis)) = entry.split_once('=') else {
            return usage(&format!("--range '{entry}' is not name=start:stop:count[:lin|log]"));
        };
        if fixed.iter().any(|&(n, v)| n == name && v.is_some()) {
            return usage(&format!("parameter '{name}' given both as a flag and a range"));
        }
        let axis = match Axis::parse(axis) {
            Ok(a) => a,
            Err(msg) => return usage(&msg),
        };
        if let Err(msg) = spec.set_param(name, ParamSpec::Range(axis)) {
            return usage(&msg);
        }
    }
    if spec.family.is_empty() {
        return usage("no family given (positional argument or config 'family=')");
    }
    if !matches!(spec.format.as_str(), "json" | "csv") {
        return usage(&format!("format '{}' is not json|csv", spec.format));
    }
    let crosscheck = match spec.mode.as_str() {
        "crosscheck" => true,
        "closed" | "oracle" => false,
        other => return usage(&format!("mode '{other}' is not closed|oracle|crosscheck")),
    };
    if crosscheck && !(spec.rtol > 0.0 && spec.rtol <= 1e-2) {
        return usage(&format!("rtol {} outside (0, 1e-2]", spec.rtol));
    }

    let grid = spec.grid();
    // reject malformed families before burning time on the grid
    if let Some(first) = grid.first() {
        if let Err(msg) = build_request(&spec.family, first) {
            return usage(&msg);
        }
    }
    let rows: Vec<Record> = grid
        .par_iter()
        .map(|p| sweep_row(&spec, *p, crosscheck))
        .collect();

    let mut text = String::new();
    if spec.format == "csv" {
        text.push_str(CSV_HEADER);
        text.push('\n');
        for r in &rows {
            text.push_str(&r.csv_row());
            text.push('\n');
        }
    } else {
        for r in &rows {
            text.push_str(&r.json_line(None));
            text.push('\n');
        }
    }
    if let Err(e) = write_output(args.out.as_ref(), &text) {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_NOCONV);
    }
    let converged = rows.iter().filter(|r| r.converged).count();
    if crosscheck {
        eprintln!(
            "crosscheck: {} pass, {} fail",
            converged,
            rows.len() - converged
        );
    }
    if converged == rows.len() {
        ExitCode::from(EXIT_OK)
    } else {
        ExitCode::from(EXIT_NOCONV)
    }
}

fn sweep_row(spec: &SweepSpec, params: Params, crosscheck: bool) -> Record {
    let mut rec = Record {
        family: spec.family.clone(),
        params,
        value: None,
        abs_err: None,
        method: String::new(),
        work: 0,
        converged: false,
    };
    // family validated on the first grid point, so this cannot be a usage
    // error; any failure past here is per-row
    let req = match build_request(&spec.family, &params) {
        Ok(r) => r,
        Err(msg) => {
            rec.method = msg;
            return rec;
        }
    };
    if crosscheck {
        let closed = thermo::eval(&req, EvalMode::ClosedForm);
        let oracle = thermo::eval(&req, EvalMode::Oracle);
        fill_crosscheck(&mut rec, closed, oracle, spec.rtol);
    } else {
        let mode = if spec.mode == "oracle" {
            EvalMode::Oracle
        } else {
            EvalMode::ClosedForm
        };
        match thermo::eval(&req, mode) {
            Ok(r) => {
                rec.value = Some(r.re());
                rec.abs_err = Some(r.abs_error_estimate);
                rec.method = r.method.to_string();
                rec.work = r.work;
                rec.converged = r.converged;
            }
            Err(e) => rec.method = error_marker(&e).to_string(),
        }
    }
    rec
}

/// A cross-checked row. When one route fails the other's value is still
/// reported (the spec's "oracle values still present" behaviour) with the
/// failing route's error marker in the method column and converged=false.
fn fill_crosscheck(
    rec: &mut Record,
    closed: Result<EvalResult, EvalError>,
    oracle: Result<EvalResult, EvalError>,
    rtol: f64,
) {
    match (closed, oracle) {
        (Ok(c), Ok(o)) => {
            let scale = o.re().abs().max(f64::MIN_POSITIVE);
            let rel = (c.re() - o.re()).abs() / scale;
            rec.value = Some(c.re());
            rec.abs_err = Some((c.re() - o.re()).abs().max(c.abs_error_estimate));
            rec.method = c.method.to_string();
            rec.work = c.work + o.work;
            rec.converged = rel <= rtol && c.converged && o.converged;
        }
        (Err(e), Ok(o)) => {
            rec.value = Some(o.re());
            rec.abs_err = Some(o.abs_error_estimate);
            rec.method = error_marker(&e).to_string();
            rec.work = o.work;
        }
        (Ok(c), Err(e)) => {
            rec.value = Some(c.re());
            rec.abs_err = Some(c.abs_error_estimate);
            rec.method = error_marker(&e).to_string();
            rec.work = c.work;
        }
        (Err(e), Err(_)) => {
            rec.method = error_marker(&e).to_string();
        }
    }
}

// ---------------------------------------------------------------------------
// qdemo
// ---------------------------------------------------------------------------

/// Side-by-side table: q-rate via quadrature, the nearest classical family
/// (I1 for q=1 and the depleted side, the cut-off integral I2 with
/// d = 1/(1-q) for q < 1), and their relative difference.
fn cmd_qdemo(args: QdemoArgs) -> ExitCode {
    if args.count < 1 {
        return usage("count must be >= 1");
    }
    if !(args.z_start > 0.0) || args.z_stop < args.z_start {
        return usage("need 0 < z-start <= z-stop");
    }
    let axis = Axis {
        start: args.z_start,
        stop: args.z_stop,
        count: args.count,
        log: false,
    };
    let cfg = QuadratureConfig::default();
    println!(
        "{:>24} {:>24} {:>24} {:>12}  classical",
        "z", "q_rate", "classical", "rel_diff"
    );
    for z in axis.values() {
        let integrand = match qstat::QRateIntegrand::new(args.nu, z, args.q) {
            Ok(p) => p,
            Err(e) => {
                eprintln!("error: {e}");
                return exit_for(&e);
            }
        };
        let rate = match qstat::q_rate(&integrand, &cfg) {
            Ok(r) => r.re(),
            Err(e) => {
                eprintln!("error: {e}");
                return exit_for(&e);
            }
        };
        let (label, classical) = match integrand.y_cut() {
            Some(d) if args.nu >= 1.0 => (
                format!("I2(d={d:.3})"),
                thermo::eval_i2(z, d, args.nu, EvalMode::Oracle),
            ),
            _ => ("I1".to_string(), thermo::eval_i1(z, args.nu, EvalMode::Oracle)),
        };
        let classical = match classical {
            Ok(r) => r.re(),
            Err(e) => {
                eprintln!("error: {e}");
                return exit_for(&e);
            }
        };
        let rel = (rate - classical).abs() / classical.abs().max(f64::MIN_POSITIVE);
        println!(
            "{:>24} {:>24} {:>24} {:>12.3e}  {}",
            fmt17(z),
            fmt17(rate),
            fmt17(classical),
            rel,
            label
        );
    }
    ExitCode::from(EXIT_OK)
}

// ---------------------------------------------------------------------------
// selftest
// ---------------------------------------------------------------------------

fn cmd_selftest() -> ExitCode {
    let reports = thermofun::acceptance::run_all();
    let mut all_pass = true;
    for r in &reports {
        let status = if r.pass { "pass" } else { "FAIL" };
        if r.detail.is_empty() {
            println!("criterion {:>2} [{status}] {}", r.id, r.name);
        } else {
            println!("criterion {:>2} [{status}] {} — {}", r.id, r.name, r.detail);
        }
        all_pass &= r.pass;
    }
    if all_pass {
        println!("selftest: all {} criteria passed", reports.len());
        ExitCode::from(EXIT_OK)
    } else {
        println!("selftest: FAILURES present");
        ExitCode::from(EXIT_NOCONV)
    }
}
