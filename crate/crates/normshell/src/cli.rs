//! Command-line front-end: shell computation, decomposition, verification,
//! sampling, and moment bounds with JSON/CSV output.
//!
//! Exit codes: 0 success, 1 usage error, 2 infeasible input (target outside
//! the shell, dimension too small, infeasible split).

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::decompose::{decompose, SolverConfig};
use crate::error::Error;
use crate::geometry::{Norm, Vector};
use crate::moments::{bounds_report, empirical_check, Assumption, MomentProfile};
use crate::oracle::{sample_batch, shell_coverage_check};
use crate::shell::{shell_of_radii, RadiusList};

#[derive(Parser)]
#[command(name = "normshell", version, about = "Norm shells, sphere-sum decompositions and moment bounds")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Inner and outer radius of the shell spanned by the given sphere radii
    Shell {
        /// Comma-separated nonnegative radii, e.g. 1,1,1
        #[arg(long)]
        radii: String,
    },
    /// Split a target vector into summands of prescribed norms
    Decompose {
        /// Norm spec: l<p> with p >= 1 or "inf", optional :w=<weights> (e.g. l2, linf, l1:w=2,1)
        #[arg(long)]
        norm: String,
        /// Comma-separated target vector coordinates
        #[arg(long)]
        target: String,
        #[arg(long)]
        radii: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 200)]
        max_iter: usize,
    },
    /// Validate a decomposition against a target and radii
    Check {
        #[arg(long)]
        norm: String,
        #[arg(long)]
        target: String,
        #[arg(long)]
        radii: String,
        /// JSON file with the summands: either a bare array of vectors or
        /// the output of the decompose subcommand
        #[arg(long)]
        summands: PathBuf,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Sample sums of sphere points and emit them as CSV
    Sample {
        #[arg(long)]
        norm: String,
        #[arg(long)]
        radii: String,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        /// Also run the shell coverage check with this many bins
        /// (report goes to stderr)
        #[arg(long)]
        bins: Option<usize>,
    },
    /// Moment bounds for a sum given the individual moments
    Bounds {
        /// Comma-separated moments E|X_i| (order 1) or E|X_i|^2 (order 2)
        #[arg(long)]
        moments: String,
        /// One of N, IIDC, IC, MG
        #[arg(long)]
        assumption: String,
        #[arg(long)]
        order: u8,
    },
    /// Check sampled paths against the bound formulas
    VerifyBounds {
        /// CSV file, one sample path per row, n columns of increments
        #[arg(long)]
        paths: PathBuf,
        #[arg(long)]
        assumption: String,
    },
}

#[derive(Serialize)]
struct ShellOut {
    inner: f64,
    outer: f64,
}

#[derive(Serialize)]
struct DecomposeOut {
    summands: Vec<Vec<f64>>,
    achieved_norms: Vec<f64>,
    max_norm_error: f64,
}

#[derive(Serialize)]
struct CheckOut {
    pass: bool,
    sum_error: f64,
    max_norm_error: f64,
    tol: f64,
}

#[derive(Serialize)]
struct BoundsOut {
    lower: f64,
    upper: f64,
    optimal: bool,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Infeasible(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_infeasible() {
            CliError::Infeasible(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

/// Parses and runs one invocation, returning the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.cmd) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(CliError::Infeasible(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn dispatch(cmd: Cmd) -> Result<i32, CliError> {
    match cmd {
        Cmd::Shell { radii } => {
            let radii = parse_radii(&radii)?;
            let s = shell_of_radii(&radii);
            println!("{}", json(&ShellOut { inner: s.inner, outer: s.outer }));
            Ok(0)
        }
        Cmd::Decompose { norm, target, radii, tol, max_iter } => {
            let norm = parse_norm(&norm)?;
            let target = parse_vector(&target)?;
            let radii = parse_radii(&radii)?;
            let cfg = solver_config(tol, max_iter)?;
            let d = decompose(&norm, &target, &radii, &cfg)?;
            println!(
                "{}",
                json(&DecomposeOut {
                    summands: d.summands.iter().map(|v| v.coords().to_vec()).collect(),
                    achieved_norms: d.achieved_norms,
                    max_norm_error: d.max_norm_error,
                })
            );
            Ok(0)
        }
        Cmd::Check { norm, target, radii, summands, tol } => {
            let norm = parse_norm(&norm)?;
            let target = parse_vector(&target)?;
            let radii = parse_radii(&radii)?;
            let summands = read_summands(&summands)?;
            let out = run_check(&norm, &target, &radii, &summands, tol)?;
            let pass = out.pass;
            println!("{}", json(&out));
            Ok(if pass { 0 } else { 2 })
        }
        Cmd::Sample { norm, radii, dim, trials, seed, bins } => {
            let norm = parse_norm(&norm)?;
            let radii = parse_radii(&radii)?;
            if dim < 2 {
                return Err(CliError::Infeasible(format!(
                    "dimension must be at least 2 (got {dim})"
                )));
            }
            let batch = sample_batch(&norm, &radii, dim, trials, seed)?;
            let mut out = String::new();
            if dim == 2 {
                out.push_str("index,sum_norm,x,y\n");
                for (i, (p, n)) in batch.points.iter().zip(&batch.achieved_sum_norms).enumerate() {
                    out.push_str(&format!("{i},{n},{},{}\n", p.coords()[0], p.coords()[1]));
                }
            } else {
                out.push_str("index,sum_norm\n");
                for (i, n) in batch.achieved_sum_norms.iter().enumerate() {
                    out.push_str(&format!("{i},{n}\n"));
                }
            }
            print!("{out}");
            if let Some(bins) = bins {
                if bins == 0 || trials < bins {
                    return Err(CliError::Usage("need trials >= bins >= 1".into()));
                }
                let report = shell_coverage_check(&norm, &radii, dim, trials, bins, seed)?;
                eprintln!("{}", json(&report));
            }
            Ok(0)
        }
        Cmd::Bounds { moments, assumption, order } => {
            let profile = MomentProfile::new(parse_f64_list(&moments)?)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let assumption: Assumption = assumption.parse()?;
            let r = bounds_report(&profile, assumption, order, None)?;
            println!("{}", json(&BoundsOut { lower: r.lower, upper: r.upper, optimal: r.optimal }));
            Ok(0)
        }
        Cmd::VerifyBounds { paths, assumption } => {
            let assumption: Assumption = assumption.parse()?;
            let rows = read_paths_csv(&paths)?;
            let report = empirical_check(&rows, assumption)?;
            let within = report.within_bounds;
            println!("{}", json(&report));
            Ok(if within { 0 } else { 2 })
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serialization cannot fail")
}

fn solver_config(tol: f64, max_iter: usize) -> Result<SolverConfig, CliError> {
    if !tol.is_finite() || tol <= 0.0 {
        return Err(CliError::Usage(format!("--tol must be positive (got {tol})")));
    }
    if max_iter == 0 {
        return Err(CliError::Usage("--max-iter must be at least 1".into()));
    }
    Ok(SolverConfig { tol, max_iter })
}

fn parse_f64_list(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<f64>()
                .map_err(|_| CliError::Usage(format!("cannot parse '{t}' as a number")))
        })
        .collect()
}

fn parse_vector(s: &str) -> Result<Vector, CliError> {
    Vector::new(parse_f64_list(s)?).map_err(|e| CliError::Usage(e.to_string()))
}

fn parse_radii(s: &str) -> Result<RadiusList, CliError> {
    RadiusList::new(parse_f64_list(s)?).map_err(|e| CliError::Usage(e.to_string()))
}

/// Norm spec grammar: `l<p>` with `p` a decimal >= 1 or `inf`, plus an
/// optional `:w=<comma-list>` weight suffix.
fn parse_norm(spec: &str) -> Result<Norm, CliError> {
    let (base, suffix) = match spec.split_once(':') {
        Some((b, s)) => (b, Some(s)),
        None => (spec, None),
    };
    let p_str = base
        .strip_prefix('l')
        .ok_or_else(|| CliError::Usage(format!("unknown norm spec '{spec}'")))?;
    let p = if p_str.eq_ignore_ascii_case("inf") {
        f64::INFINITY
    } else {
        p_str
            .parse::<f64>()
            .map_err(|_| CliError::Usage(format!("unknown norm spec '{spec}'")))?
    };
    if p.is_nan() || p < 1.0 {
        return Err(CliError::Usage(format!("norm exponent must be >= 1 (got {p})")));
    }
    match suffix {
        None => Ok(Norm::Lp(p)),
        Some(s) => {
            let list = s
                .strip_prefix("w=")
                .ok_or_else(|| CliError::Usage(format!("unknown norm suffix '{s}'")))?;
            let weights = parse_f64_list(list)?;
            if weights.is_empty() || weights.iter().any(|&w| w.is_nan() || w <= 0.0) {
                return Err(CliError::Usage("weights must be positive".into()));
            }
            Ok(Norm::WeightedLp { p, weights })
        }
    }
}

fn read_summands(path: &PathBuf) -> Result<Vec<Vector>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("invalid JSON in {}: {e}", path.display())))?;
    let array = value
        .get("summands")
        .cloned()
        .unwrap_or(value);
    let rows: Vec<Vec<f64>> = serde_json::from_value(array)
        .map_err(|e| CliError::Usage(format!("summands must be an array of vectors: {e}")))?;
    rows.into_iter()
        .map(|r| Vector::new(r).map_err(|e| CliError::Usage(e.to_string())))
        .collect()
}

fn read_paths_csv(path: &PathBuf) -> Result<Vec<Vec<f64>>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let mut rows = Vec::new();
    for line in text.lines() {
        if line.trim().is_empty() {
            continue;
        }
        rows.push(parse_f64_list(line)?);
    }
    if rows.is_empty() {
        return Err(CliError::Usage("paths file contains no rows".into()));
    }
    Ok(rows)
}

fn run_check(
    norm: &Norm,
    target: &Vector,
    radii: &RadiusList,
    summands: &[Vector],
    tol: f64,
) -> Result<CheckOut, CliError> {
    if summands.len() != radii.len() {
        return Err(CliError::Usage(format!(
            "got {} summands for {} radii",
            summands.len(),
            radii.len()
        )));
    }
    let mut total = Vector::zeros(target.dim());
    for s in summands {
        if s.dim() != target.dim() {
            return Err(CliError::Usage("summand dimension does not match target".into()));
        }
        total = total.add(s);
    }
    let zn = norm.eval(target)?;
    let sum_error = norm.eval(&total.sub(target))?;
    let mut max_norm_error = 0.0f64;
    let mut norms_ok = true;
    for (s, &a) in summands.iter().zip(radii.radii()) {
        let n = norm.eval(s)?;
        max_norm_error = max_norm_error.max((n - a).abs());
        if (n - a).abs() > tol * (1.0 + a) {
            norms_ok = false;
        }
    }
    let pass = norms_ok && sum_error <= tol * (1.0 + zn);
    Ok(CheckOut { pass, sum_error, max_norm_error, tol })
}
