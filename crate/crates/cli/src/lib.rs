//! `abflux` command-line front end.
//!
//! Exit codes: 0 success / PASS, 1 tolerance FAIL, 2 usage or precondition,
//! 3 numerical non-convergence, 4 I/O.

pub mod axis;

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use abflux::eigen::{EvalPoint, FluxParameter};
use abflux::grid::{compare_grids, ComparisonReport, FieldGrid, GridMeta};
use abflux::laplace::{run_identities, IdentityId, IdentityReport, ProbeSet};
use abflux::propagator::{PropagatorParams, SpacetimePoint};
use abflux::special::SeriesConfig;
use abflux::{evaluate, free_propagator_2d, propagator_k, ComplexValue, Method, Strategy};
use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex;
use rayon::prelude::*;
use serde::Serialize;

use crate::axis::{parse_axis, parse_scalar, AxisSpec};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_NUMERICAL: u8 = 3;
pub const EXIT_IO: u8 = 4;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }

    fn io(path: &Path, err: std::io::Error) -> Self {
        Self { code: EXIT_IO, message: format!("{}: {err}", path.display()) }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<abflux::Error> for CliError {
    fn from(err: abflux::Error) -> Self {
        let code = if err.is_numerical() { EXIT_NUMERICAL } else { EXIT_USAGE };
        Self { code, message: err.to_string() }
    }
}

fn stdout_err(err: std::io::Error) -> CliError {
    CliError { code: EXIT_IO, message: format!("stdout: {err}") }
}

/// Result of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Done,
    Pass,
    Fail,
}

impl Outcome {
    pub fn code(self) -> u8 {
        match self {
            Outcome::Done | Outcome::Pass => EXIT_OK,
            Outcome::Fail => EXIT_FAIL,
        }
    }

    fn from_pass(pass: bool) -> Self {
        if pass {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Series,
    Decompose,
    Closed,
    AbOriginal,
    Convolution,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Series => Method::Series,
            MethodArg::Decompose => Method::Decompose,
            MethodArg::Closed => Method::Closed,
            MethodArg::AbOriginal => Method::AbOriginal,
            MethodArg::Convolution => Method::Convolution,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Series,
    ClosedAuto,
}

#[derive(Debug, Parser)]
#[command(name = "abflux", version, about = "Aharonov-Bohm eigenfunctions, propagator and Laplace identity checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate F_alpha at one point.
    Eval {
        #[arg(long, value_parser = parse_scalar, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, value_parser = parse_scalar)]
        rho: f64,
        #[arg(long, value_parser = parse_scalar, allow_negative_numbers = true)]
        theta: f64,
        #[arg(long, value_enum, default_value = "series")]
        method: MethodArg,
        /// Series truncation tolerance.
        #[arg(long, default_value_t = 1e-14)]
        tol: f64,
    },
    /// Evaluate F_alpha on a (rho, theta) grid and write CSV or JSON.
    Grid {
        #[arg(long, value_parser = parse_scalar, allow_negative_numbers = true)]
        alpha: f64,
        /// VALUE or START:STOP:COUNT[:open]
        #[arg(long, value_parser = parse_axis)]
        rho: AxisSpec,
        /// VALUE or START:STOP:COUNT[:open]
        #[arg(long, value_parser = parse_axis, allow_negative_numbers = true)]
        theta: AxisSpec,
        #[arg(long, value_enum, default_value = "series")]
        method: MethodArg,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
        /// Series truncation tolerance.
        #[arg(long, default_value_t = 1e-14)]
        tol: f64,
        #[arg(long)]
        no_timestamp: bool,
    },
    /// Compare two evaluation methods over a grid.
    Compare {
        #[arg(long, value_parser = parse_scalar, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, value_parser = parse_axis, default_value = "0.5:20:8")]
        rho: AxisSpec,
        #[arg(long, value_parser = parse_axis, allow_negative_numbers = true, default_value = "0:4pi:16:open")]
        theta: AxisSpec,
        #[arg(long, value_enum)]
        method_a: MethodArg,
        #[arg(long, value_enum)]
        method_b: MethodArg,
        /// Maximum allowed |a - b|.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, default_value_t = 1e-14)]
        series_tol: f64,
        /// Optional JSON report.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        no_timestamp: bool,
    },
    /// Check F(rho, theta + 2pi) = F(rho, theta).
    Singlevalued {
        #[arg(long, value_parser = parse_scalar, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, value_parser = parse_scalar)]
        rho: f64,
        #[arg(long, value_parser = parse_scalar, value_delimiter = ',', allow_negative_numbers = true,
              default_value = "0.1,1,2,3,5")]
        theta: Vec<f64>,
        #[arg(long, value_enum, default_value = "series")]
        method: MethodArg,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 1e-14)]
        series_tol: f64,
    },
    /// Check the Laplace-transform identities by quadrature.
    LaplaceReport {
        /// `all` or a comma-separated list (eq7, eq9, eq10, eq11-12, eq12-series, eq13, eq14, faltung).
        #[arg(long, default_value = "all")]
        identity: String,
        /// File with one `re,im` probe value of s per line; replaces the default probes.
        #[arg(long)]
        probes: Option<PathBuf>,
        /// Optional JSON output of every report.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-10)]
        quad_tol: f64,
    },
    /// Evaluate the propagator K(r, theta; r', theta'; tau).
    Propagator {
        #[arg(long, value_parser = parse_scalar, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, value_parser = parse_scalar, allow_negative_numbers = true)]
        tau: f64,
        #[arg(long, value_parser = parse_scalar)]
        r: f64,
        #[arg(long, value_parser = parse_scalar, allow_negative_numbers = true)]
        theta: f64,
        #[arg(long, value_parser = parse_scalar)]
        r_prime: f64,
        #[arg(long, value_parser = parse_scalar, allow_negative_numbers = true)]
        theta_prime: f64,
        #[arg(long, value_enum, default_value = "closed-auto")]
        strategy: StrategyArg,
        /// At alpha = 0, also print |K - K_free|.
        #[arg(long)]
        check_free: bool,
        #[arg(long, default_value_t = 1e-14)]
        tol: f64,
    },
}

fn series_config(tol: f64) -> Result<SeriesConfig<f64>, CliError> {
    SeriesConfig::new(tol, 10_000, 3).map_err(|e| CliError::usage(format!("--tol: {e}")))
}

fn flux(alpha: f64) -> Result<FluxParameter<f64>, CliError> {
    FluxParameter::new(alpha).map_err(|e| CliError::usage(format!("--alpha: {e}")))
}

fn timestamp(suppress: bool) -> Option<String> {
    (!suppress).then(|| chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true))
}

fn write_complex(out: &mut impl Write, z: ComplexValue) -> Result<(), CliError> {
    writeln!(out, "re  = {:.14e}", z.re).map_err(stdout_err)?;
    writeln!(out, "im  = {:.14e}", z.im).map_err(stdout_err)?;
    writeln!(out, "abs = {:.14e}", z.norm()).map_err(stdout_err)?;
    writeln!(out, "arg = {:.14e}", z.arg()).map_err(stdout_err)?;
    Ok(())
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

/// Evaluates `method` on the lattice, in parallel, keeping `(rho, theta)` order.
pub fn evaluate_grid(
    alpha: f64,
    rho: &[f64],
    theta: &[f64],
    method: Method,
    cfg: &SeriesConfig<f64>,
    timestamp: Option<String>,
) -> Result<FieldGrid, CliError> {
    let flux = flux(alpha)?;
    method.check(&flux)?;
    if rho.iter().any(|&r| r < 0.0) {
        return Err(CliError::usage("--rho values must be >= 0"));
    }
    let nt = theta.len();
    let samples = (0..rho.len() * nt)
        .into_par_iter()
        .map(|k| {
            let p = EvalPoint::new(rho[k / nt], theta[k % nt])?;
            evaluate(method, &flux, &p, cfg)
        })
        .collect::<abflux::Result<Vec<_>>>()?;
    let meta = GridMeta { alpha, method: method.label().to_string(), tolerance: cfg.abs_tol, timestamp };
    Ok(FieldGrid::new(rho.to_vec(), theta.to_vec(), samples, meta)?)
}

#[derive(Serialize)]
struct CompareJson<'a> {
    alpha: f64,
    method_a: &'a str,
    method_b: &'a str,
    tolerance: f64,
    passed: bool,
    timestamp: Option<String>,
    report: &'a ComparisonReport,
}

/// Runs a parsed command, writing human-readable output to `out`.
pub fn run(cli: Cli, out: &mut impl Write) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Eval { alpha, rho, theta, method, tol } => {
            let cfg = series_config(tol)?;
            let flux = flux(alpha)?;
            let p = EvalPoint::new(rho, theta)?;
            let z = evaluate(method.into(), &flux, &p, &cfg)?;
            write_complex(out, z)?;
            Ok(Outcome::Done)
        }
        Command::Grid { alpha, rho, theta, method, out: path, format, tol, no_timestamp } => {
            let cfg = series_config(tol)?;
            let grid = evaluate_grid(alpha, &rho.values(), &theta.values(), method.into(), &cfg, timestamp(no_timestamp))?;
            let text = match format {
                FormatArg::Csv => grid.to_csv(),
                FormatArg::Json => grid.to_json() + "\n",
            };
            match path {
                Some(p) => write_file(&p, &text)?,
                None => out.write_all(text.as_bytes()).map_err(stdout_err)?,
            }
            Ok(Outcome::Done)
        }
        Command::Compare { alpha, rho, theta, method_a, method_b, tol, series_tol, out: path, no_timestamp } => {
            let cfg = series_config(series_tol)?;
            let (ma, mb): (Method, Method) = (method_a.into(), method_b.into());
            let (rv, tv) = (rho.values(), theta.values());
            let a = evaluate_grid(alpha, &rv, &tv, ma, &cfg, None)?;
            let b = evaluate_grid(alpha, &rv, &tv, mb, &cfg, None)?;
            // ratio is reported as ab-original / other
            let (num, den, with_ratio) = match (ma, mb) {
                (Method::AbOriginal, m) if m != Method::AbOriginal => (&a, &b, true),
                (m, Method::AbOriginal) if m != Method::AbOriginal => (&b, &a, true),
                _ => (&a, &b, false),
            };
            let report = compare_grids(num, den, with_ratio)?;
            let passed = report.max_abs_diff <= tol;
            let w = |out: &mut dyn Write, line: String| writeln!(out, "{line}").map_err(stdout_err);
            w(out, format!("method-a       {}", ma.label()))?;
            w(out, format!("method-b       {}", mb.label()))?;
            w(out, format!("points         {}", report.abs_diff.len()))?;
            w(out, format!("max_abs_diff   {:.6e}", report.max_abs_diff))?;
            w(out, format!("mean_abs_diff  {:.6e}", report.mean_abs_diff))?;
            w(out, format!("worst_point    rho={} theta={}", report.worst_point.0, report.worst_point.1))?;
            if let Some(r) = &report.ratio_summary {
                w(out, format!(
                    "ratio          ab-original/other mean={:.12e}{:+.12e}i dispersion={:.3e} points={} theta_independent={}",
                    r.mean_ratio.re, r.mean_ratio.im, r.dispersion, r.points, r.theta_independent
                ))?;
            }
            w(out, format!("result         {} (tol {:e})", if passed { "PASS" } else { "FAIL" }, tol))?;
            if let Some(p) = path {
                let doc = CompareJson {
                    alpha,
                    method_a: ma.label(),
                    method_b: mb.label(),
                    tolerance: tol,
                    passed,
                    timestamp: timestamp(no_timestamp),
                    report: &report,
                };
                write_file(&p, &(serde_json::to_string_pretty(&doc).expect("report serialises") + "\n"))?;
            }
            Ok(Outcome::from_pass(passed))
        }
        Command::Singlevalued { alpha, rho, theta, method, tol, series_tol } => {
            let cfg = series_config(series_tol)?;
            let flux = flux(alpha)?;
            let method: Method = method.into();
            method.check(&flux)?;
            let mut pass = true;
            for &t in &theta {
                let base = evaluate(method, &flux, &EvalPoint::new(rho, t)?, &cfg)?;
                let shifted = evaluate(method, &flux, &EvalPoint::new(rho, t + 2.0 * std::f64::consts::PI)?, &cfg)?;
                let diff = (shifted - base).norm();
                pass &= diff <= tol;
                let mut line = format!("theta={t:<10} |F(theta+2pi)-F(theta)|={diff:.6e}");
                if method == Method::AbOriginal && base.norm() > 0.0 {
                    let m: Complex<f64> = shifted / base;
                    line.push_str(&format!(" multiplier={:.12}{:+.12}i", m.re, m.im));
                }
                writeln!(out, "{line}").map_err(stdout_err)?;
            }
            writeln!(out, "{} (tol {:e})", if pass { "PASS" } else { "FAIL" }, tol).map_err(stdout_err)?;
            Ok(Outcome::from_pass(pass))
        }
        Command::LaplaceReport { identity, probes, out: path, quad_tol } => {
            let ids = parse_identity_filter(&identity)?;
            let mut set = match probes {
                Some(p) => ProbeSet::new(read_probes(&p)?)?,
                None => ProbeSet::default(),
            };
            if !(quad_tol > 0.0) {
                return Err(CliError::usage("--quad-tol must be positive"));
            }
            set.quad_tol = quad_tol;
            let reports = run_identities(&ids, &set)?;
            write_identity_table(out, &reports)?;
            if let Some(p) = path {
                write_file(&p, &(serde_json::to_string_pretty(&reports).expect("reports serialise") + "\n"))?;
            }
            Ok(Outcome::from_pass(reports.iter().all(|r| r.passed)))
        }
        Command::Propagator { alpha, tau, r, theta, r_prime, theta_prime, strategy, check_free, tol } => {
            let cfg = series_config(tol)?;
            let params = PropagatorParams::new(tau, flux(alpha)?)?;
            let pts = SpacetimePoint::new(r, theta, r_prime, theta_prime)?;
            let strategy = match strategy {
                StrategyArg::Series => Strategy::Series,
                StrategyArg::ClosedAuto => Strategy::ClosedAuto,
            };
            if check_free && alpha != 0.0 {
                return Err(CliError::usage("--check-free requires --alpha 0"));
            }
            let k = propagator_k(&params, &pts, strategy, &cfg)?;
            write_complex(out, k)?;
            if check_free {
                let free = free_propagator_2d(tau, &pts)?;
                writeln!(out, "free_residual = {:.6e}", (k - free).norm()).map_err(stdout_err)?;
            }
            Ok(Outcome::Done)
        }
    }
}

pub fn parse_identity_filter(text: &str) -> Result<Vec<IdentityId>, CliError> {
    if text.trim() == "all" {
        return Ok(IdentityId::ALL.to_vec());
    }
    text.split(',')
        .map(|t| t.trim().parse::<IdentityId>().map_err(CliError::usage))
        .collect()
}

/// Reads `re,im` (or `re`) per line; blank lines and `#` comments are skipped.
pub fn read_probes(path: &Path) -> Result<Vec<Complex<f64>>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let mut probes = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).collect();
        let bad = |e: String| CliError::usage(format!("{}:{}: {e}", path.display(), i + 1));
        let (re, im) = match parts.as_slice() {
            [re] => (parse_scalar(re).map_err(bad)?, 0.0),
            [re, im] => (parse_scalar(re).map_err(bad)?, parse_scalar(im).map_err(bad)?),
            _ => return Err(bad("expected 're,im'".into())),
        };
        if !(re > 0.0) {
            return Err(CliError::usage(format!(
                "{}:{}: probe s = {re}{im:+}i violates Re(s) > 0",
                path.display(),
                i + 1
            )));
        }
        probes.push(Complex::new(re, im));
    }
    Ok(probes)
}

fn describe_probe(r: &IdentityReport) -> String {
    let p = &r.probe;
    let mut s = format!("s={}{:+}i", p.s.re, p.s.im);
    if let Some(v) = p.alpha {
        s += &format!(" alpha={v}");
    }
    if let Some(v) = p.eps {
        s += &format!(" eps={v}");
    }
    if let Some(v) = p.nu {
        s += &format!(" nu={v}");
    }
    if let Some(v) = p.n {
        s += &format!(" n={v}");
    }
    if let Some(v) = p.theta {
        s += &format!(" theta={v:.6}");
    }
    s
}

fn write_identity_table(out: &mut impl Write, reports: &[IdentityReport]) -> Result<(), CliError> {
    writeln!(out, "{:<12} {:<44} {:>25} {:>25} {:>10} {:>8} result", "identity", "probe", "lhs", "rhs", "abs_err", "tol")
        .map_err(stdout_err)?;
    for r in reports {
        writeln!(
            out,
            "{:<12} {:<44} {:>25} {:>25} {:>10.3e} {:>8.0e} {}",
            r.identity_id.label(),
            describe_probe(r),
            format!("{:.10}{:+.10}i", r.lhs.re, r.lhs.im),
            format!("{:.10}{:+.10}i", r.rhs.re, r.rhs.im),
            r.abs_err,
            r.tolerance,
            if r.passed { "PASS" } else { "FAIL" }
        )
        .map_err(stdout_err)?;
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    writeln!(out, "{} checks, {} failed", reports.len(), failed).map_err(stdout_err)?;
    Ok(())
}
