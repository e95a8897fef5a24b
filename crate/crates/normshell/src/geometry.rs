//! Vectors, norm evaluation, radial projection onto spheres, and
//! origin-avoiding paths on a sphere between antipodal points.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Dense finite-dimensional real coordinate vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector {
    coords: Vec<f64>,
}

impl Vector {
    /// Builds a vector, rejecting empty coordinate lists and non-finite
    /// entries.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidArgument("vector must have dimension >= 1".into()));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Vector { coords })
    }

    pub fn zeros(dim: usize) -> Self {
        Vector { coords: vec![0.0; dim] }
    }

    /// Standard basis vector e_j (0-based index).
    pub fn basis(dim: usize, j: usize) -> Self {
        let mut coords = vec![0.0; dim];
        coords[j] = 1.0;
        Vector { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0.0)
    }

    pub fn scale(&self, s: f64) -> Vector {
        Vector { coords: self.coords.iter().map(|c| c * s).collect() }
    }

    pub fn add(&self, other: &Vector) -> Vector {
        debug_assert_eq!(self.dim(), other.dim());
        Vector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        debug_assert_eq!(self.dim(), other.dim());
        Vector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

/// Evaluatable norm on coordinate vectors.
///
/// `Lp(p)` covers the whole family for `p >= 1`, with `f64::INFINITY`
/// standing for the sup norm. `WeightedLp` evaluates
/// `(sum w_i |x_i|^p)^(1/p)` for positive weights, i.e. the `Lp` norm after
/// rescaling coordinates by `w_i^(1/p)`. `Custom` norms are trusted to
/// satisfy the norm axioms; see [`audit_norm_axioms`] for a spot check.
#[derive(Clone)]
pub enum Norm {
    Lp(f64),
    WeightedLp { p: f64, weights: Vec<f64> },
    Custom(NormFn),
}

/// A user-supplied norm evaluated on raw coordinates.
pub type NormFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

impl fmt::Debug for Norm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Norm::Lp(p) => write!(f, "Lp({p})"),
            Norm::WeightedLp { p, weights } => write!(f, "WeightedLp({p}, {weights:?})"),
            Norm::Custom(_) => write!(f, "Custom(..)"),
        }
    }
}

impl Norm {
    pub fn l1() -> Self {
        Norm::Lp(1.0)
    }

    pub fn l2() -> Self {
        Norm::Lp(2.0)
    }

    pub fn linf() -> Self {
        Norm::Lp(f64::INFINITY)
    }

    /// Evaluates `‖x‖`.
    pub fn eval(&self, x: &Vector) -> Result<f64> {
        match self {
            Norm::Lp(p) => {
                check_exponent(*p)?;
                Ok(lp(x.coords(), *p))
            }
            Norm::WeightedLp { p, weights } => {
                check_exponent(*p)?;
                if weights.len() != x.dim() {
                    return Err(Error::DimensionMismatch {
                        expected: weights.len(),
                        got: x.dim(),
                    });
                }
                if weights.iter().any(|&w| !w.is_finite() || w <= 0.0) {
                    return Err(Error::InvalidArgument("weights must be positive and finite".into()));
                }
                if p.is_infinite() {
                    Ok(x.coords()
                        .iter()
                        .zip(weights)
                        .map(|(c, w)| w * c.abs())
                        .fold(0.0, f64::max))
                } else {
                    Ok(x.coords()
                        .iter()
                        .zip(weights)
                        .map(|(c, w)| w * c.abs().powf(*p))
                        .sum::<f64>()
                        .powf(1.0 / p))
                }
            }
            Norm::Custom(f) => Ok(f(x.coords())),
        }
    }
}

fn check_exponent(p: f64) -> Result<()> {
    if p >= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("norm exponent must be >= 1 (got {p})")))
    }
}

fn lp(coords: &[f64], p: f64) -> f64 {
    if p.is_infinite() {
        coords.iter().map(|c| c.abs()).fold(0.0, f64::max)
    } else if p == 1.0 {
        coords.iter().map(|c| c.abs()).sum()
    } else if p == 2.0 {
        coords.iter().map(|c| c * c).sum::<f64>().sqrt()
    } else {
        coords.iter().map(|c| c.abs().powf(p)).sum::<f64>().powf(1.0 / p)
    }
}

/// Maps `x` to `r·x/‖x‖`, the point of norm `r` in the direction of `x`.
///
/// `r = 0` yields the zero vector for any input; a zero input with `r > 0`
/// is an error.
pub fn radial_project(norm: &Norm, x: &Vector, r: f64) -> Result<Vector> {
    if !r.is_finite() || r < 0.0 {
        return Err(Error::NegativeRadius(r));
    }
    if r == 0.0 {
        return Ok(Vector::zeros(x.dim()));
    }
    let n = norm.eval(x)?;
    if n == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok(x.scale(r / n))
}

/// Deterministic unit vector linearly independent of `u` (for `u != 0`).
///
/// Picks the standard basis vector at the index of the smallest `|u_j|`
/// (lowest index on ties) and projects it to norm 1. For `u = 0` this is
/// the projected `e_1`.
pub fn independent_unit(norm: &Norm, u: &Vector) -> Result<Vector> {
    if u.dim() < 2 {
        return Err(Error::DimensionTooSmall { dim: u.dim() });
    }
    let j = if u.is_zero() {
        0
    } else {
        let mut best = 0;
        for (i, c) in u.coords().iter().enumerate() {
            if c.abs() < u.coords()[best].abs() {
                best = i;
            }
        }
        best
    };
    radial_project(norm, &Vector::basis(u.dim(), j), 1.0)
}

/// Continuous path on the sphere of radius `a` from `a·u` at `t = 0` to
/// `−a·u` at `t = 1`.
///
/// With `v = independent_unit(u)`, the point is the radial projection of
/// `cos(πt)·u + sin(πt)·v` to radius `a`. The projection argument is never
/// zero: `u` and `v` are linearly independent and `(cos πt, sin πt)` never
/// vanishes, so the path avoids the origin for every `t`.
pub fn sphere_path(norm: &Norm, a: f64, u: &Vector, t: f64) -> Result<Vector> {
    if u.dim() < 2 {
        return Err(Error::DimensionTooSmall { dim: u.dim() });
    }
    let un = norm.eval(u)?;
    if (un - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidArgument(format!(
            "sphere_path requires a unit direction (got norm {un})"
        )));
    }
    let v = independent_unit(norm, u)?;
    let (s, c) = (std::f64::consts::PI * t).sin_cos();
    let arg = u.scale(c).add(&v.scale(s));
    radial_project(norm, &arg, a)
}

/// Spot-checks the norm axioms on random vectors: absolute homogeneity,
/// the triangle inequality, and positive definiteness on basis vectors.
///
/// Returns the first violated axiom as an error message. Custom norms are
/// otherwise trusted; this is the audit hook.
pub fn audit_norm_axioms(
    norm: &Norm,
    dim: usize,
    cases: usize,
    seed: u64,
) -> std::result::Result<(), String> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for j in 0..dim {
        let e = Vector::basis(dim, j);
        let n = norm.eval(&e).map_err(|e| e.to_string())?;
        if n.is_nan() || n <= 0.0 {
            return Err(format!("definiteness violated on basis vector {j}: norm {n}"));
        }
    }
    for _ in 0..cases {
        let x = Vector::new((0..dim).map(|_| rng.gen_range(-10.0..10.0)).collect()).unwrap();
        let y = Vector::new((0..dim).map(|_| rng.gen_range(-10.0..10.0)).collect()).unwrap();
        let lambda: f64 = rng.gen_range(-5.0..5.0);
        let nx = norm.eval(&x).map_err(|e| e.to_string())?;
        let ny = norm.eval(&y).map_err(|e| e.to_string())?;
        let nlx = norm.eval(&x.scale(lambda)).map_err(|e| e.to_string())?;
        if (nlx - lambda.abs() * nx).abs() > 1e-12 * (1.0 + nlx) {
            return Err(format!(
                "homogeneity violated: ‖λx‖ = {nlx}, |λ|·‖x‖ = {}",
                lambda.abs() * nx
            ));
        }
        let nxy = norm.eval(&x.add(&y)).map_err(|e| e.to_string())?;
        let scale = 1.0 + nx + ny;
        if nxy > nx + ny + 1e-12 * scale {
            return Err(format!("triangle inequality violated: {nxy} > {nx} + {ny}"));
        }
        if nxy < (nx - ny).abs() - 1e-12 * scale {
            return Err(format!("lower triangle inequality violated: {nxy} < |{nx} - {ny}|"));
        }
        if !x.is_zero() && (nx.is_nan() || nx <= 0.0) {
            return Err("definiteness violated on a random nonzero vector".into());
        }
    }
    Ok(())
}
