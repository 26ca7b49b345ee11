//! Scalar root bracketing and safeguarded Newton–bisection.

use crate::error::{Error, Result};

/// Sub-intervals of `[lo, hi]` (split into `samples` pieces) where `f`
/// changes sign or vanishes at a sample.
pub fn bracket_roots(f: impl Fn(f64) -> f64, lo: f64, hi: f64, samples: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let h = (hi - lo) / samples as f64;
    let mut x0 = lo;
    let mut f0 = f(x0);
    for i in 1..=samples {
        let x1 = if i == samples { hi } else { lo + i as f64 * h };
        let f1 = f(x1);
        if f0 == 0.0 {
            out.push((x0, x0));
        } else if f0 * f1 < 0.0 {
            out.push((x0, x1));
        }
        if i == samples && f1 == 0.0 {
            out.push((x1, x1));
        }
        x0 = x1;
        f0 = f1;
    }
    out
}

/// Root of `f` in `[a, b]` with `f(a)·f(b) ≤ 0`, using Newton steps
/// (derivative `df`) guarded by bisection.
pub fn newton_bisect(
    f: impl Fn(f64) -> f64,
    df: impl Fn(f64) -> f64,
    mut a: f64,
    mut b: f64,
    xtol: f64,
) -> Result<f64> {
    const OP: &str = "numerics::newton_bisect";
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa * fb > 0.0 {
        return Err(Error::Domain {
            op: OP,
            msg: format!("no sign change on [{a}, {b}]"),
        });
    }
    let mut x = 0.5 * (a + b);
    for _ in 0..200 {
        let fx = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if fa * fx < 0.0 {
            b = x;
        } else {
            a = x;
            fa = fx;
        }
        let d = df(x);
        let newton = x - fx / d;
        let next = if d != 0.0 && newton.is_finite() && newton > a.min(b) && newton < a.max(b) {
            newton
        } else {
            0.5 * (a + b)
        };
        if (next - x).abs() <= xtol * (1.0 + x.abs()) {
            return Ok(next);
        }
        x = next;
    }
    Err(Error::Accuracy {
        op: OP,
        msg: format!("no convergence in [{a}, {b}]"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_roots() {
        let f = |u: f64| u * u * u - 19.0 * u;
        let br = bracket_roots(f, -5.0, 5.0, 1000);
        let roots: Vec<f64> = br
            .iter()
            .map(|&(a, b)| newton_bisect(f, |u| 3.0 * u * u - 19.0, a, b, 1e-15).unwrap())
            .collect();
        assert_eq!(roots.len(), 3);
        let s = 19f64.sqrt();
        for (r, e) in roots.iter().zip([-s, 0.0, s]) {
            assert!((r - e).abs() < 1e-12);
        }
    }

    #[test]
    fn no_sign_change() {
        assert!(newton_bisect(|x| x * x + 1.0, |x| 2.0 * x, -1.0, 1.0, 1e-12).is_err());
    }
}
