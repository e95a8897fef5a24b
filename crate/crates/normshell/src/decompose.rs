//! Constructive decomposition of a vector into summands of prescribed
//! norms: a two-sphere split found by bisection along a sphere path, and
//! the inductive n-sphere version built on top of it.

use crate::error::{Error, Result};
use crate::geometry::{independent_unit, radial_project, sphere_path, Norm, Vector};
use crate::shell::{feasible_r_interval, membership, shell_of_radii, RadiusList};

#[derive(Debug, Clone, Copy)]
pub struct SolverConfig {
    /// Absolute norm-error tolerance, scaled internally by (1 + target radius).
    pub tol: f64,
    /// Bisection iteration cap.
    pub max_iter: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { tol: 1e-10, max_iter: 200 }
    }
}

/// Result of splitting a target vector into summands of prescribed norms.
///
/// The summands add up to the target exactly by construction; norm error
/// relative to the target radii is reported per decomposition.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub summands: Vec<Vector>,
    pub target_radii: Vec<f64>,
    pub achieved_norms: Vec<f64>,
    pub max_norm_error: f64,
}

/// Bisection on `[lo, hi]` with `g(lo) <= 0 <= g(hi)`, stopping when
/// `|g| <= stop_tol`.
fn bisect<F: FnMut(f64) -> Result<f64>>(
    mut g: F,
    mut lo: f64,
    mut hi: f64,
    stop_tol: f64,
    max_iter: usize,
) -> Result<f64> {
    let mut residual = f64::INFINITY;
    for _ in 0..max_iter {
        let mid = 0.5 * (lo + hi);
        let gm = g(mid)?;
        if gm.abs() <= stop_tol {
            return Ok(mid);
        }
        residual = gm.abs();
        if gm > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Err(Error::ToleranceNotReached { residual })
}

/// Splits `z` into `x + y` with `‖x‖ = a` (exact up to radial-projection
/// rounding) and `‖y‖ = b` within `tol·(1 + b)`. The sum is exact:
/// `y` is computed as `z − x`.
///
/// Requires `|a − b| <= ‖z‖ <= a + b` up to slack `tol·(1 + a + b)`.
/// The solver walks the sphere of radius `a` from `a·u` to `−a·u` along an
/// origin-avoiding path, where `u` is the direction of `z` (or an
/// arbitrary fixed unit vector when `z` is at the origin), and bisects
/// `g(t) = ‖z − p(t)‖ − b`, which changes sign between the endpoints.
pub fn solve_two(
    norm: &Norm,
    z: &Vector,
    a: f64,
    b: f64,
    cfg: &SolverConfig,
) -> Result<(Vector, Vector)> {
    if z.dim() < 2 {
        return Err(Error::DimensionTooSmall { dim: z.dim() });
    }
    if a < 0.0 || b < 0.0 {
        return Err(Error::NegativeRadius(a.min(b)));
    }
    let zn = norm.eval(z)?;
    let eps = cfg.tol * (1.0 + a + b);
    if zn < (a - b).abs() - eps || zn > a + b + eps {
        return Err(Error::Infeasible { norm: zn, lo: (a - b).abs(), hi: a + b });
    }
    if a == 0.0 {
        return Ok((Vector::zeros(z.dim()), z.clone()));
    }
    if b == 0.0 {
        // zn ≈ a > 0 here, so z is projectable
        let x = radial_project(norm, z, a)?;
        let y = z.sub(&x);
        return Ok((x, y));
    }
    let u = if zn <= eps {
        independent_unit(norm, &Vector::zeros(z.dim()))?
    } else {
        radial_project(norm, z, 1.0)?
    };
    let point = |t: f64| sphere_path(norm, a, &u, t);
    let stop_tol = cfg.tol * (1.0 + b);
    let g = |t: f64| -> Result<f64> { Ok(norm.eval(&z.sub(&point(t)?))? - b) };

    let g0 = norm.eval(&z.sub(&point(0.0)?))? - b;
    let g1 = norm.eval(&z.sub(&point(1.0)?))? - b;
    let t = if g0.abs() <= stop_tol.max(eps) {
        0.0
    } else if g1.abs() <= stop_tol.max(eps) {
        1.0
    } else if g0 > 0.0 || g1 < 0.0 {
        // endpoint bounds |‖z‖−a| <= b <= ‖z‖+a fail beyond slack
        return Err(Error::Infeasible { norm: zn, lo: (a - b).abs(), hi: a + b });
    } else {
        bisect(g, 0.0, 1.0, stop_tol, cfg.max_iter)?
    };
    let x = point(t)?;
    let y = z.sub(&x);
    Ok((x, y))
}

/// Decomposes `z` into `n` summands with `‖x_i‖ = a_i` within
/// `tol·(1 + a_i)` and `Σ x_i = z` exactly.
///
/// Requires dimension >= 2 and `‖z‖` inside the shell of the radii.
/// Zero radii contribute zero summands; the positive radii are peeled off
/// one at a time, each step picking the midpoint of the feasible
/// intermediate-radius interval and delegating to [`solve_two`].
pub fn decompose(
    norm: &Norm,
    z: &Vector,
    radii: &RadiusList,
    cfg: &SolverConfig,
) -> Result<Decomposition> {
    if z.dim() < 2 {
        return Err(Error::DimensionTooSmall { dim: z.dim() });
    }
    let shell = shell_of_radii(radii);
    let zn = norm.eval(z)?;
    if !membership(norm, z, shell, cfg.tol)? {
        return Err(Error::NotInShell { norm: zn, inner: shell.inner, outer: shell.outer });
    }

    let n = radii.len();
    let mut summands = vec![Vector::zeros(z.dim()); n];
    let positive: Vec<usize> = (0..n).filter(|&i| radii.radii()[i] > 0.0).collect();

    match positive.len() {
        0 => {
            // all radii zero: ‖z‖ <= tol by membership; keep the sum exact
            summands[0] = z.clone();
        }
        1 => {
            summands[positive[0]] = z.clone();
        }
        _ => {
            let pos_radii: Vec<f64> = positive.iter().map(|&i| radii.radii()[i]).collect();
            let mut residual = z.clone();
            for step in (1..positive.len()).rev() {
                let prefix = shell_of_radii(&RadiusList::new(pos_radii[..step].to_vec())?);
                let a_step = pos_radii[step];
                let wn = norm.eval(&residual)?;
                let (lo, hi) = feasible_r_interval(prefix, a_step, wn)
                    .map_err(|e| Error::Step { index: step, source: Box::new(e) })?;
                let r = (0.5 * (lo + hi)).clamp(prefix.inner, prefix.outer);
                let (x, y) = solve_two(norm, &residual, r, a_step, cfg)
                    .map_err(|e| Error::Step { index: step, source: Box::new(e) })?;
                summands[positive[step]] = y;
                residual = x;
            }
            summands[positive[0]] = residual;
        }
    }

    let achieved_norms: Vec<f64> = summands
        .iter()
        .map(|x| norm.eval(x))
        .collect::<Result<_>>()?;
    let max_norm_error = achieved_norms
        .iter()
        .zip(radii.radii())
        .map(|(got, want)| (got - want).abs())
        .fold(0.0, f64::max);
    Ok(Decomposition {
        summands,
        target_radii: radii.radii().to_vec(),
        achieved_norms,
        max_norm_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vec2(a: f64, b: f64) -> Vector {
        Vector::new(vec![a, b]).unwrap()
    }

    fn cfg() -> SolverConfig {
        SolverConfig::default()
    }

    fn check_pair(norm: &Norm, z: &Vector, a: f64, b: f64, x: &Vector, y: &Vector, tol: f64) {
        let sum = x.add(y);
        for (s, t) in sum.coords().iter().zip(z.coords()) {
            assert!((s - t).abs() <= 1e-12 * (1.0 + t.abs()), "sum mismatch");
        }
        let nx = norm.eval(x).unwrap();
        let ny = norm.eval(y).unwrap();
        assert!((nx - a).abs() <= 1e-13 * (1.0 + a), "‖x‖ = {nx}, wanted {a}");
        assert!((ny - b).abs() <= tol * (1.0 + b), "‖y‖ = {ny}, wanted {b}");
    }

    #[test]
    fn solve_two_interior() {
        let norm = Norm::l2();
        let z = vec2(3.0, 0.0);
        let (x, y) = solve_two(&norm, &z, 5.0, 4.0, &cfg()).unwrap();
        check_pair(&norm, &z, 5.0, 4.0, &x, &y, cfg().tol);
    }

    #[test]
    fn solve_two_zero_target() {
        let norm = Norm::l2();
        let z = Vector::zeros(2);
        let (x, y) = solve_two(&norm, &z, 1.0, 1.0, &cfg()).unwrap();
        check_pair(&norm, &z, 1.0, 1.0, &x, &y, cfg().tol);
        // antipodal pair
        for (a, b) in x.coords().iter().zip(y.coords()) {
            assert!((a + b).abs() < 1e-12);
        }
    }

    #[test]
    fn solve_two_outer_boundary() {
        for norm in [Norm::l1(), Norm::l2(), Norm::linf()] {
            let z = vec2(1.2, -2.1);
            let zn = norm.eval(&z).unwrap();
            let (a, b) = (zn * 0.25, zn * 0.75);
            let (x, y) = solve_two(&norm, &z, a, b, &cfg()).unwrap();
            check_pair(&norm, &z, a, b, &x, &y, cfg().tol);
        }
    }

    #[test]
    fn solve_two_zero_radii() {
        let norm = Norm::l2();
        let z = vec2(0.0, 2.0);
        let (x, y) = solve_two(&norm, &z, 0.0, 2.0, &cfg()).unwrap();
        assert!(x.is_zero());
        assert_eq!(y, z);
        let (x, y) = solve_two(&norm, &z, 2.0, 0.0, &cfg()).unwrap();
        assert_eq!(x, z);
        assert!(y.is_zero());
    }

    #[test]
    fn solve_two_infeasible() {
        let norm = Norm::l2();
        assert!(matches!(
            solve_two(&norm, &vec2(10.0, 0.0), 1.0, 1.0, &cfg()),
            Err(Error::Infeasible { .. })
        ));
        assert!(matches!(
            solve_two(&norm, &vec2(0.1, 0.0), 5.0, 1.0, &cfg()),
            Err(Error::Infeasible { .. })
        ));
    }

    #[test]
    fn solve_two_rejects_dim_one() {
        assert!(matches!(
            solve_two(&Norm::l2(), &Vector::new(vec![1.0]).unwrap(), 1.0, 1.0, &cfg()),
            Err(Error::DimensionTooSmall { dim: 1 })
        ));
    }

    #[test]
    fn bisect_keeps_bracket_signs() {
        // every accepted bracket endpoint keeps its sign
        let mut evals: Vec<(f64, f64)> = Vec::new();
        let root2 = bisect(
            |t| {
                let v = t * t - 2.0;
                evals.push((t, v));
                Ok(v)
            },
            0.0,
            2.0,
            1e-12,
            200,
        )
        .unwrap();
        assert!((root2 - std::f64::consts::SQRT_2).abs() < 1e-6);
        let mut lo = 0.0f64;
        let mut hi = 2.0f64;
        for (t, v) in evals {
            assert!(lo < t && t < hi);
            if v > 0.0 {
                hi = t;
            } else {
                lo = t;
            }
            assert!(lo * lo - 2.0 <= 1e-12 && hi * hi - 2.0 >= -1e-12);
        }
    }

    #[test]
    fn decompose_examples() {
        let cfg = cfg();
        // sup-norm triple summing to zero
        let d = decompose(
            &Norm::linf(),
            &Vector::zeros(2),
            &RadiusList::new(vec![1.0, 1.0, 1.0]).unwrap(),
            &cfg,
        )
        .unwrap();
        assert!(d.max_norm_error <= cfg.tol * 2.0);
        let total = d.summands.iter().fold(Vector::zeros(2), |acc, x| acc.add(x));
        assert!(Norm::linf().eval(&total).unwrap() <= 1e-12);

        // outer boundary
        let d = decompose(
            &Norm::l2(),
            &vec2(6.0, 0.0),
            &RadiusList::new(vec![1.0, 2.0, 3.0]).unwrap(),
            &cfg,
        )
        .unwrap();
        for (got, want) in d.achieved_norms.iter().zip(&d.target_radii) {
            assert!((got - want).abs() <= cfg.tol * (1.0 + want));
        }

        // l1 pair
        let d = decompose(
            &Norm::l1(),
            &vec2(0.3, 0.2),
            &RadiusList::new(vec![1.0, 1.0]).unwrap(),
            &cfg,
        )
        .unwrap();
        let total = d.summands[0].add(&d.summands[1]);
        assert!((total.coords()[0] - 0.3).abs() < 1e-12);
        assert!((total.coords()[1] - 0.2).abs() < 1e-12);
        assert!((d.achieved_norms[0] - 1.0).abs() <= 1e-13 * 2.0);
        assert!((d.achieved_norms[1] - 1.0).abs() <= cfg.tol * 2.0);
    }

    #[test]
    fn decompose_single_radius() {
        let z = vec2(3.0, 4.0);
        let d = decompose(&Norm::l2(), &z, &RadiusList::new(vec![5.0]).unwrap(), &cfg()).unwrap();
        assert_eq!(d.summands[0], z);
    }

    #[test]
    fn decompose_zero_radii_mixed() {
        let z = vec2(0.5, 0.5);
        let d = decompose(
            &Norm::l2(),
            &z,
            &RadiusList::new(vec![0.0, 2.0, 0.0, 2.0]).unwrap(),
            &cfg(),
        )
        .unwrap();
        assert!(d.summands[0].is_zero());
        assert!(d.summands[2].is_zero());
        let total = d.summands.iter().fold(Vector::zeros(2), |acc, x| acc.add(x));
        assert!((total.coords()[0] - 0.5).abs() < 1e-12);
        assert!((total.coords()[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn decompose_rejects_outside_shell() {
        let cfg = cfg();
        let radii = RadiusList::new(vec![3.0, 1.0]).unwrap();
        assert!(matches!(
            decompose(&Norm::l2(), &vec2(10.0, 0.0), &radii, &cfg),
            Err(Error::NotInShell { .. })
        ));
        assert!(matches!(
            decompose(&Norm::l2(), &vec2(1.0, 0.0), &radii, &cfg),
            Err(Error::NotInShell { .. })
        ));
    }

    #[test]
    fn decompose_rejects_dim_one() {
        let radii = RadiusList::new(vec![1.0, 1.0, 1.0]).unwrap();
        assert!(matches!(
            decompose(&Norm::l2(), &Vector::new(vec![1.0]).unwrap(), &radii, &cfg()),
            Err(Error::DimensionTooSmall { dim: 1 })
        ));
    }
}
