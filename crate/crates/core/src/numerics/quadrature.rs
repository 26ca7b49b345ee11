//! Adaptive Simpson quadrature.
//!
//! The integrand is mapped through `x = a + (b - a) sin²(θ/2)`, θ ∈ [0, π],
//! which turns inverse-square-root endpoint singularities into bounded
//! integrands while leaving smooth integrands smooth.

use crate::error::{Error, Result};

const OP: &str = "numerics::quadrature";
const MAX_DEPTH: u32 = 48;
const MAX_EVALS: usize = 2_000_000;

struct Simpson<'a, F> {
    f: &'a F,
    evals: usize,
    min_width: f64,
    tol_floor: f64,
}

impl<F: Fn(f64) -> f64> Simpson<'_, F> {
    fn eval(&mut self, x: f64) -> f64 {
        self.evals += 1;
        (self.f)(x)
    }

    #[allow(clippy::too_many_arguments)]
    fn recurse(&mut self, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> Result<f64> {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = self.eval(lm);
        let frm = self.eval(rm);
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if !delta.is_finite() {
            return Err(Error::Accuracy {
                op: OP,
                msg: format!("non-finite integrand near x = {m}"),
            });
        }
        if delta.abs() <= 15.0 * tol.max(self.tol_floor).max(f64::EPSILON * (left + right).abs()) || (b - a).abs() < self.min_width {
            return Ok(left + right + delta / 15.0);
        }
        if depth == 0 || self.evals > MAX_EVALS {
            return Err(Error::Accuracy {
                op: OP,
                msg: format!("subdivision budget exhausted on [{a}, {b}] (error estimate {:e})", delta.abs() / 15.0),
            });
        }
        Ok(self.recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?
            + self.recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?)
    }
}

/// Plain adaptive Simpson on `[a, b]` (integrand evaluated at endpoints).
pub fn adaptive_simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let mut s = Simpson {
        f: &f,
        evals: 0,
        min_width: 1e-13 * (b - a).abs(),
        // deep subintervals stop splitting the budget once rounding noise dominates
        tol_floor: tol * 1e-6,
    };
    let fa = s.eval(a);
    let fb = s.eval(b);
    let fm = s.eval(0.5 * (a + b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    s.recurse(a, b, fa, fm, fb, whole, tol, MAX_DEPTH)
}

/// `∫_a^b f`, tolerating `1/√` endpoint singularities.
pub fn quadrature(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let len = b - a;
    let g = |theta: f64| {
        let x = if theta <= std::f64::consts::FRAC_PI_2 {
            let s = (0.5 * theta).sin();
            a + len * s * s
        } else {
            let c = (0.5 * theta).cos();
            b - len * c * c
        };
        let jac = 0.5 * len * theta.sin();
        if jac == 0.0 {
            return 0.0;
        }
        f(x) * jac
    };
    // The mapped integrand is bounded, but a singular factor can still
    // overflow within rounding distance of an endpoint; sample slightly
    // inward there instead.
    let guarded = |theta: f64| {
        let v = g(theta);
        let at_end = theta == 0.0 || theta == std::f64::consts::PI;
        if v.is_finite() && !(at_end && v == 0.0) {
            return v;
        }
        let inward = if theta < std::f64::consts::FRAC_PI_2 { 1.0 } else { -1.0 };
        let mut eps = 1e-7;
        while eps < 1e-2 {
            let w = g(theta + inward * eps);
            if w.is_finite() {
                return w;
            }
            eps *= 10.0;
        }
        v
    };
    adaptive_simpson(guarded, 0.0, std::f64::consts::PI, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sine_integral() {
        let v = quadrature(f64::sin, 0.0, std::f64::consts::PI, 1e-12).unwrap();
        assert!((v - 2.0).abs() < 1e-10);
    }

    #[test]
    fn inverse_sqrt_singularity() {
        let v = quadrature(|y| 1.0 / y.sqrt(), 0.0, 1.0, 1e-10).unwrap();
        assert!((v - 2.0).abs() < 1e-6, "{v}");
        let v = quadrature(|y| 1.0 / (1.0 - y * y).sqrt(), 0.0, 1.0, 1e-10).unwrap();
        assert!((v - std::f64::consts::FRAC_PI_2).abs() < 1e-6, "{v}");
    }

    #[test]
    fn zero_integrand() {
        assert_eq!(quadrature(|_| 0.0, -1.0, 4.0, 1e-12).unwrap(), 0.0);
        assert_eq!(quadrature(f64::exp, 2.0, 2.0, 1e-12).unwrap(), 0.0);
    }

    #[test]
    fn reversed_limits() {
        let v = quadrature(|x| x * x, 1.0, 0.0, 1e-12).unwrap();
        assert!((v + 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn nonintegrable_reports_accuracy_error() {
        let r = adaptive_simpson(|x| 1.0 / x, -1.0, 1.0, 1e-12);
        assert!(matches!(r, Err(Error::Accuracy { .. })));
    }
}
