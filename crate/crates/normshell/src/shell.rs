//! Radius algebra: the closed-form shell spanned by sums of sphere points,
//! the one-step shell extension behind the induction, membership, and the
//! feasible intermediate-radius interval.

use crate::error::{Error, Result};
use crate::geometry::{Norm, Vector};

/// Finite list of sphere radii `a_1, …, a_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadiusList {
    radii: Vec<f64>,
}

impl RadiusList {
    pub fn new(radii: Vec<f64>) -> Result<Self> {
        if radii.is_empty() {
            return Err(Error::EmptyRadiusList);
        }
        for &r in &radii {
            if !r.is_finite() {
                return Err(Error::NonFinite);
            }
            if r < 0.0 {
                return Err(Error::NegativeRadius(r));
            }
        }
        Ok(RadiusList { radii })
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn len(&self) -> usize {
        self.radii.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// The set `{z : inner <= ‖z‖ <= outer}` around the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Shell {
    pub inner: f64,
    pub outer: f64,
}

impl Shell {
    pub fn new(inner: f64, outer: f64) -> Result<Self> {
        if !inner.is_finite() || !outer.is_finite() {
            return Err(Error::NonFinite);
        }
        if inner < 0.0 {
            return Err(Error::NegativeRadius(inner));
        }
        if inner > outer {
            return Err(Error::InvalidShell { inner, outer });
        }
        Ok(Shell { inner, outer })
    }
}

/// Shell covered by sums of one point from each sphere:
/// `outer = Σ a_i`, `inner = max_k (a_k − Σ_{i≠k} a_i)_+`, the latter
/// computed in closed form as `(2·max a − Σ a)_+`. A single radius gives
/// the degenerate shell `[a_1, a_1]`.
pub fn shell_of_radii(a: &RadiusList) -> Shell {
    let sum: f64 = a.radii().iter().sum();
    if a.len() == 1 {
        return Shell { inner: a.radii()[0], outer: sum };
    }
    let max = a.radii().iter().cloned().fold(0.0, f64::max);
    Shell { inner: (2.0 * max - sum).max(0.0), outer: sum }
}

/// One induction step: the shell of norms reachable by adding a point of
/// norm `a` to a point of the given shell. This is `[min f, max g]` for
/// `f(r) = |r − a|` and `g(r) = r + a` over `r` in the shell.
pub fn extend_shell(s: Shell, a: f64) -> Shell {
    let inner = if a < s.inner {
        s.inner - a
    } else if a > s.outer {
        a - s.outer
    } else {
        0.0
    };
    Shell { inner, outer: s.outer + a }
}

/// Whether `‖z‖` lies in the shell, padded by `rel_tol·(1 + outer)` on
/// both sides.
pub fn membership(norm: &Norm, z: &Vector, s: Shell, rel_tol: f64) -> Result<bool> {
    let n = norm.eval(z)?;
    let eps = rel_tol * (1.0 + s.outer);
    Ok(n >= s.inner - eps && n <= s.outer + eps)
}

/// Intermediate radii `r` for which a vector of norm `w_norm` splits into
/// sphere points of radii `r` and `a`, with `r` constrained to the prefix
/// shell: `[max(inner, |w_norm − a|), min(outer, w_norm + a)]`.
///
/// Nonempty whenever `w_norm` lies in `extend_shell(s_prefix, a)`; an
/// empty interval beyond rounding slack means the caller violated that
/// precondition.
pub fn feasible_r_interval(s_prefix: Shell, a: f64, w_norm: f64) -> Result<(f64, f64)> {
    let lo = s_prefix.inner.max((w_norm - a).abs());
    let hi = s_prefix.outer.min(w_norm + a);
    if lo > hi {
        let slack = 1e-9 * (1.0 + s_prefix.outer + a);
        if lo - hi > slack {
            return Err(Error::Infeasible { norm: w_norm, lo, hi });
        }
        let mid = (0.5 * (lo + hi)).clamp(s_prefix.inner, s_prefix.outer);
        return Ok((mid, mid));
    }
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rl(radii: &[f64]) -> RadiusList {
        RadiusList::new(radii.to_vec()).unwrap()
    }

    /// Brute-force inner radius: explicit max over k of (a_k − Σ_{i≠k} a_i)_+.
    pub(crate) fn inner_by_loop(radii: &[f64]) -> f64 {
        let mut best = 0.0f64;
        for k in 0..radii.len() {
            let rest: f64 = radii
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != k)
                .map(|(_, r)| r)
                .sum();
            best = best.max((radii[k] - rest).max(0.0));
        }
        best
    }

    #[test]
    fn shell_of_radii_examples() {
        assert_eq!(shell_of_radii(&rl(&[1.0, 1.0, 1.0])), Shell { inner: 0.0, outer: 3.0 });
        assert_eq!(shell_of_radii(&rl(&[3.0, 1.0])), Shell { inner: 2.0, outer: 4.0 });
        assert_eq!(shell_of_radii(&rl(&[5.0, 1.0, 1.0])), Shell { inner: 3.0, outer: 7.0 });
        assert_eq!(shell_of_radii(&rl(&[2.0])), Shell { inner: 2.0, outer: 2.0 });
    }

    #[test]
    fn closed_form_matches_loop() {
        let cases: [&[f64]; 5] = [
            &[1.0, 1.0, 1.0],
            &[5.0, 1.0, 1.0],
            &[0.0, 0.0],
            &[7.5],
            &[2.0, 2.0, 9.0, 1.0],
        ];
        for radii in cases {
            if radii.len() >= 2 {
                assert_eq!(shell_of_radii(&rl(radii)).inner, inner_by_loop(radii));
            }
        }
    }

    #[test]
    fn empty_radius_list_rejected() {
        assert!(matches!(RadiusList::new(vec![]), Err(Error::EmptyRadiusList)));
        assert!(matches!(RadiusList::new(vec![1.0, -0.5]), Err(Error::NegativeRadius(_))));
    }

    #[test]
    fn extend_shell_examples() {
        assert_eq!(extend_shell(Shell { inner: 5.0, outer: 5.0 }, 1.0), Shell { inner: 4.0, outer: 6.0 });
        assert_eq!(extend_shell(Shell { inner: 4.0, outer: 6.0 }, 1.0), Shell { inner: 3.0, outer: 7.0 });
        assert_eq!(extend_shell(Shell { inner: 1.0, outer: 3.0 }, 2.0), Shell { inner: 0.0, outer: 5.0 });
        // a beyond the outer radius
        assert_eq!(extend_shell(Shell { inner: 1.0, outer: 3.0 }, 10.0), Shell { inner: 7.0, outer: 13.0 });
    }

    #[test]
    fn fold_matches_closed_form() {
        let radii = [5.0, 1.0, 1.0];
        let mut s = Shell { inner: radii[0], outer: radii[0] };
        for &a in &radii[1..] {
            s = extend_shell(s, a);
        }
        assert_eq!(s, shell_of_radii(&rl(&radii)));
    }

    #[test]
    fn membership_examples() {
        let norm = Norm::l2();
        let z = Vector::new(vec![1.0, 1.0]).unwrap();
        assert!(membership(&norm, &z, Shell { inner: 1.0, outer: 2.0 }, 0.0).unwrap());
        let z = Vector::new(vec![3.0, 0.0]).unwrap();
        assert!(!membership(&norm, &z, Shell { inner: 1.0, outer: 2.0 }, 0.0).unwrap());
        let z = Vector::zeros(2);
        assert!(membership(&Norm::linf(), &z, Shell { inner: 0.0, outer: 3.0 }, 0.0).unwrap());
    }

    #[test]
    fn feasible_r_interval_examples() {
        assert_eq!(
            feasible_r_interval(Shell { inner: 4.0, outer: 6.0 }, 1.0, 3.5).unwrap(),
            (4.0, 4.5)
        );
        assert_eq!(
            feasible_r_interval(Shell { inner: 1.0, outer: 1.0 }, 1.0, 0.0).unwrap(),
            (1.0, 1.0)
        );
        assert_eq!(
            feasible_r_interval(Shell { inner: 0.0, outer: 2.0 }, 5.0, 4.0).unwrap(),
            (1.0, 2.0)
        );
    }

    #[test]
    fn feasible_r_interval_rejects_far_outside() {
        assert!(matches!(
            feasible_r_interval(Shell { inner: 0.0, outer: 1.0 }, 1.0, 10.0),
            Err(Error::Infeasible { .. })
        ));
    }
}
