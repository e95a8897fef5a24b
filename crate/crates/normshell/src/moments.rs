//! First- and second-moment bounds for sums of random variables given the
//! individual absolute moments, under structural assumptions of increasing
//! generality, plus an empirical checker for sampled paths.

use serde::Serialize;
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

/// Structural assumption on the process, in increasing generality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Assumption {
    /// Independent, identically distributed, centred.
    #[serde(rename = "IIDC")]
    Iidc,
    /// Independent and centred.
    #[serde(rename = "IC")]
    Ic,
    /// Partial sums form a martingale.
    #[serde(rename = "MG")]
    Mg,
    /// No assumption.
    #[serde(rename = "N")]
    None,
}

impl std::str::FromStr for Assumption {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "IIDC" => Ok(Assumption::Iidc),
            "IC" => Ok(Assumption::Ic),
            "MG" => Ok(Assumption::Mg),
            "N" => Ok(Assumption::None),
            _ => Err(Error::InvalidArgument(format!(
                "unknown assumption '{s}' (expected N, IIDC, IC or MG)"
            ))),
        }
    }
}

/// Given moments `E|X_i|` (order 1) or `E|X_i|²` (order 2).
#[derive(Debug, Clone, PartialEq)]
pub struct MomentProfile {
    moments: Vec<f64>,
}

impl MomentProfile {
    pub fn new(moments: Vec<f64>) -> Result<Self> {
        if moments.is_empty() {
            return Err(Error::InvalidArgument("moment profile must be nonempty".into()));
        }
        if moments.iter().any(|m| !m.is_finite() || *m < 0.0) {
            return Err(Error::InvalidArgument("moments must be finite and nonnegative".into()));
        }
        Ok(MomentProfile { moments })
    }

    pub fn moments(&self) -> &[f64] {
        &self.moments
    }

    pub fn len(&self) -> usize {
        self.moments.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Bounds on the absolute moment of the sum under the given assumption.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BoundReport {
    pub lower: f64,
    pub upper: f64,
    pub assumption: Assumption,
    /// False only for the order-1 lower bound under IC, where no optimal
    /// bound is known and the trivial 0 is reported.
    pub optimal: bool,
}

/// Binomial probability `C(n,k) p^k (1-p)^(n-k)`, with the convention
/// `0^0 = 1` at `p ∈ {0, 1}`.
///
/// Exact integer binomial coefficients up to `n = 20`; log-space via
/// `ln Γ` beyond that.
pub fn binom_pmf(n: u64, p: f64, k: u64) -> Result<f64> {
    if k > n {
        return Err(Error::InvalidArgument(format!("k = {k} out of range [0, {n}]")));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!("p = {p} out of range [0, 1]")));
    }
    if p == 0.0 {
        return Ok(if k == 0 { 1.0 } else { 0.0 });
    }
    if p == 1.0 {
        return Ok(if k == n { 1.0 } else { 0.0 });
    }
    if n <= 20 {
        let mut c: u64 = 1;
        for i in 0..k.min(n - k) {
            c = c * (n - i) / (i + 1);
        }
        Ok(c as f64 * p.powi(k as i32) * (1.0 - p).powi((n - k) as i32))
    } else {
        let (nf, kf) = (n as f64, k as f64);
        let ln_coeff = ln_gamma(nf + 1.0) - ln_gamma(kf + 1.0) - ln_gamma(nf - kf + 1.0);
        Ok((ln_coeff + kf * p.ln() + (nf - kf) * (-p).ln_1p()).exp())
    }
}

/// Sharp first-moment lower-bound factor under IIDC:
/// `c_n = n·b(n, ⌊n/2⌋/n; ⌊n/2⌋)`, asymptotically `√(2n/π)`.
pub fn hornich_constant(n: u64) -> f64 {
    assert!(n >= 1);
    let half = n / 2;
    n as f64 * binom_pmf(n, half as f64 / n as f64, half).unwrap()
}

/// Optimal first-moment lower bound under the martingale assumption:
/// the maximum of `e_k − Σ_{i<k} e_i` over `k = 1..n` and `e_k / 2` over
/// `k = 3..n` (the second family is empty for `n < 3`).
pub fn mg_lower_bound(e: &MomentProfile) -> f64 {
    let m = e.moments();
    let mut best = 0.0f64;
    let mut prefix = 0.0;
    for (k, &ek) in m.iter().enumerate() {
        best = best.max(ek - prefix);
        if k >= 2 {
            best = best.max(ek / 2.0);
        }
        prefix += ek;
    }
    best
}

/// Lower and upper bounds on `E|S_n|` (order 1) or `E|S_n|²` (order 2)
/// from the individual moments.
///
/// At order 2 the bound is the identity `Σ e_i` on both sides. At order 1
/// the upper bound is always `Σ e_i`; the lower bound depends on the
/// assumption: the shell inner radius `(2 max e − Σ e)_+` with no
/// assumption, `c_n·e_1` under IIDC (requires equal moments; pass
/// `n_for_iidc` to expand a single common moment to length `n`),
/// [`mg_lower_bound`] under MG, and the trivial 0 under IC.
pub fn bounds_report(
    e: &MomentProfile,
    assumption: Assumption,
    order: u8,
    n_for_iidc: Option<usize>,
) -> Result<BoundReport> {
    if order != 1 && order != 2 {
        return Err(Error::InvalidArgument(format!("order must be 1 or 2 (got {order})")));
    }
    let expanded;
    let e = if let (Assumption::Iidc, Some(n), 1) = (assumption, n_for_iidc, e.len()) {
        expanded = MomentProfile::new(vec![e.moments()[0]; n])?;
        &expanded
    } else {
        e
    };
    let sum: f64 = e.moments().iter().sum();
    if order == 2 {
        return Ok(BoundReport { lower: sum, upper: sum, assumption, optimal: true });
    }
    let (lower, optimal) = match assumption {
        Assumption::None => {
            let max = e.moments().iter().cloned().fold(0.0, f64::max);
            ((2.0 * max - sum).max(0.0), true)
        }
        Assumption::Iidc => {
            let first = e.moments()[0];
            if e.moments().iter().any(|&m| m != first) {
                return Err(Error::InvalidArgument(
                    "IIDC requires all moments to be equal".into(),
                ));
            }
            (hornich_constant(e.len() as u64) * first, true)
        }
        Assumption::Mg => (mg_lower_bound(e), true),
        Assumption::Ic => (0.0, false),
    };
    Ok(BoundReport { lower, upper: sum, assumption, optimal })
}

/// Outcome of checking sampled paths against the bound formulas.
#[derive(Debug, Clone, Serialize)]
pub struct EmpiricalReport {
    pub paths: usize,
    pub increments: usize,
    pub assumption: Assumption,
    /// Column means of |X_i|.
    pub moment_estimates: Vec<f64>,
    pub mean_abs_sum: f64,
    pub std_abs_sum: f64,
    /// Three-sigma band half-width, `3·std/√m`.
    pub delta: f64,
    pub lower: f64,
    pub upper: f64,
    pub within_bounds: bool,
}

/// Monte Carlo sanity check: estimates `E|X_i|` and `E|S_n|` from the rows
/// of `paths`, evaluates [`bounds_report`] on the empirical profile, and
/// reports whether the estimate lands within the bounds padded by a
/// three-sigma band.
///
/// Under IIDC the empirical column moments are pooled into their mean,
/// since sampled columns never match exactly.
pub fn empirical_check(paths: &[Vec<f64>], assumption: Assumption) -> Result<EmpiricalReport> {
    let m = paths.len();
    if m == 0 {
        return Err(Error::InvalidArgument("need at least one sample path".into()));
    }
    let n = paths[0].len();
    if n == 0 {
        return Err(Error::InvalidArgument("paths must have at least one increment".into()));
    }
    for (i, row) in paths.iter().enumerate() {
        if row.len() != n {
            return Err(Error::InvalidArgument(format!(
                "ragged input: row {i} has {} columns, expected {n}",
                row.len()
            )));
        }
    }

    let mut moment_estimates = vec![0.0f64; n];
    let mut abs_sums = Vec::with_capacity(m);
    for row in paths {
        let mut s = 0.0;
        for (j, &x) in row.iter().enumerate() {
            moment_estimates[j] += x.abs();
            s += x;
        }
        abs_sums.push(s.abs());
    }
    for est in &mut moment_estimates {
        *est /= m as f64;
    }
    let mean_abs_sum: f64 = abs_sums.iter().sum::<f64>() / m as f64;
    let var = if m > 1 {
        abs_sums.iter().map(|s| (s - mean_abs_sum).powi(2)).sum::<f64>() / (m - 1) as f64
    } else {
        0.0
    };
    let std_abs_sum = var.sqrt();
    let delta = 3.0 * std_abs_sum / (m as f64).sqrt();

    let profile = if assumption == Assumption::Iidc {
        let pooled = moment_estimates.iter().sum::<f64>() / n as f64;
        MomentProfile::new(vec![pooled; n])?
    } else {
        MomentProfile::new(moment_estimates.clone())?
    };
    let report = bounds_report(&profile, assumption, 1, None)?;
    let within_bounds =
        mean_abs_sum >= report.lower - delta && mean_abs_sum <= report.upper + delta;
    Ok(EmpiricalReport {
        paths: m,
        increments: n,
        assumption,
        moment_estimates,
        mean_abs_sum,
        std_abs_sum,
        delta,
        lower: report.lower,
        upper: report.upper,
        within_bounds,
    })
}
