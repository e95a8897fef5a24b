//! Independent brute-force and Monte Carlo verifiers: an exhaustive 2-D
//! grid over two spheres, seeded sphere sampling, and an empirical
//! coverage check of the shell identity.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::Result;
use crate::geometry::{radial_project, Norm, Vector};
use crate::shell::{shell_of_radii, RadiusList, Shell};

/// Reproducible batch of sphere-sum samples.
#[derive(Debug, Clone)]
pub struct SampleBatch {
    pub points: Vec<Vector>,
    pub achieved_sum_norms: Vec<f64>,
    pub seed: u64,
}

/// Norms of `x + y` over a `steps × steps` grid of directions on the two
/// spheres of radii `a` and `b` in the plane.
pub fn grid_sum_norms_2d(norm: &Norm, a: f64, b: f64, steps: usize) -> Result<Vec<f64>> {
    let dirs: Vec<Vector> = (0..steps)
        .map(|i| {
            let theta = 2.0 * std::f64::consts::PI * i as f64 / steps as f64;
            Vector::new(vec![theta.cos(), theta.sin()]).unwrap()
        })
        .collect();
    let xs: Vec<Vector> = dirs
        .iter()
        .map(|d| radial_project(norm, d, a))
        .collect::<Result<_>>()?;
    let ys: Vec<Vector> = dirs
        .iter()
        .map(|d| radial_project(norm, d, b))
        .collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(steps * steps);
    for x in &xs {
        for y in &ys {
            out.push(norm.eval(&x.add(y))?);
        }
    }
    Ok(out)
}

/// Draws a point of norm `r`: independent standard-normal coordinates,
/// radially projected. Full-support in direction for any norm, but not
/// uniform on non-Euclidean spheres.
pub fn sample_sphere(norm: &Norm, r: f64, dim: usize, rng: &mut ChaCha8Rng) -> Result<Vector> {
    if r == 0.0 {
        return Ok(Vector::zeros(dim));
    }
    loop {
        let coords: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        let v = Vector::new(coords)?;
        if norm.eval(&v)? > 1e-8 {
            return radial_project(norm, &v, r);
        }
    }
}

/// Sums of one sample from each sphere, `trials` times, reproducible from
/// the seed.
pub fn sample_batch(
    norm: &Norm,
    radii: &RadiusList,
    dim: usize,
    trials: usize,
    seed: u64,
) -> Result<SampleBatch> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::with_capacity(trials);
    let mut achieved_sum_norms = Vec::with_capacity(trials);
    for _ in 0..trials {
        let mut sum = Vector::zeros(dim);
        for &r in radii.radii() {
            sum = sum.add(&sample_sphere(norm, r, dim, &mut rng)?);
        }
        achieved_sum_norms.push(norm.eval(&sum)?);
        points.push(sum);
    }
    Ok(SampleBatch { points, achieved_sum_norms, seed })
}

/// Histogram of sampled sum norms over the shell, with the two checks:
/// nothing lands outside the shell (beyond rounding slack), and for two
/// or more spheres every bin is hit once trials are large enough.
#[derive(Debug, Clone, Serialize)]
pub struct CoverageReport {
    pub inner: f64,
    pub outer: f64,
    pub histogram: Vec<usize>,
    pub out_of_shell: usize,
    pub all_bins_hit: bool,
    pub pass: bool,
}

pub fn shell_coverage_check(
    norm: &Norm,
    radii: &RadiusList,
    dim: usize,
    trials: usize,
    bins: usize,
    seed: u64,
) -> Result<CoverageReport> {
    assert!(bins >= 1 && trials >= bins);
    let Shell { inner, outer } = shell_of_radii(radii);
    let batch = sample_batch(norm, radii, dim, trials, seed)?;
    let slack = 1e-9 * (1.0 + outer);
    let width = outer - inner;
    let mut histogram = vec![0usize; bins];
    let mut out_of_shell = 0usize;
    for &v in &batch.achieved_sum_norms {
        if v < inner - slack || v > outer + slack {
            out_of_shell += 1;
            continue;
        }
        let idx = if width > 0.0 {
            (((v - inner) / width * bins as f64) as usize).min(bins - 1)
        } else {
            0
        };
        histogram[idx] += 1;
    }
    let all_bins_hit = histogram.iter().all(|&c| c > 0);
    let bins_required = radii.len() >= 2 && dim >= 2 && trials >= 1000 * bins;
    let pass = out_of_shell == 0 && (!bins_required || all_bins_hit);
    Ok(CoverageReport { inner, outer, histogram, out_of_shell, all_bins_hit, pass })
}
