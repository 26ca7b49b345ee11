use std::fmt;
use std::sync::Arc;

use crate::error::{config, Result};
use crate::numerics::Stencil;

type Evaluator = Arc<dyn Fn(f64, usize) -> f64 + Send + Sync>;

/// A kernel member together with its derivatives: `eval(x, k)` is the
/// k-th derivative at `x`.
#[derive(Clone)]
pub struct BasisFunction {
    label: String,
    eval: Evaluator,
}

impl fmt::Debug for BasisFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BasisFunction").field("label", &self.label).finish()
    }
}

/// Finite-difference step used by the fallback evaluator.
pub const FD_STEP: f64 = 1e-2;

fn falling(p: f64, k: usize) -> f64 {
    (0..k).map(|i| p - i as f64).product()
}

impl BasisFunction {
    pub fn new(label: impl Into<String>, eval: impl Fn(f64, usize) -> f64 + Send + Sync + 'static) -> Self {
        Self { label: label.into(), eval: Arc::new(eval) }
    }

    /// Derivatives by central differences of accuracy 8 with step `h`.
    pub fn finite_difference(
        label: impl Into<String>,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        h: f64,
    ) -> Self {
        Self::new(label, move |x, k| match k {
            0 => f(x),
            _ => Stencil::central(k, 8).expect("positive order").apply(&f, x, h),
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn eval(&self, x: f64, k: usize) -> f64 {
        (self.eval)(x, k)
    }

    pub fn sin() -> Self {
        Self::new("sin", |x, k| match k % 4 {
            0 => x.sin(),
            1 => x.cos(),
            2 => -x.sin(),
            _ => -x.cos(),
        })
    }

    pub fn cos() -> Self {
        Self::new("cos", |x, k| match k % 4 {
            0 => x.cos(),
            1 => -x.sin(),
            2 => -x.cos(),
            _ => x.sin(),
        })
    }

    /// `x^p`, defined for `x > 0` when `p` is not a non-negative integer.
    pub fn power(p: f64) -> Self {
        Self::new(format!("pow({p})"), move |x, k| {
            if p.fract() == 0.0 && p >= 0.0 && k as f64 > p {
                0.0
            } else {
                falling(p, k) * x.powf(p - k as f64)
            }
        })
    }

    pub fn sqrt() -> Self {
        let mut b = Self::power(0.5);
        b.label = "sqrt".into();
        b
    }

    pub fn exp(c: f64) -> Self {
        Self::new(format!("exp({c})"), move |x, k| c.powi(k as i32) * (c * x).exp())
    }

    /// Polynomial with coefficients lowest degree first.
    pub fn polynomial(coeffs: Vec<f64>) -> Self {
        let label = format!(
            "poly({})",
            coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
        );
        Self::new(label, move |x, k| {
            coeffs
                .iter()
                .enumerate()
                .skip(k)
                .rev()
                .fold(0.0, |acc, (i, c)| acc + c * falling(i as f64, k) * x.powi((i - k) as i32))
        })
    }

    /// Looks a basis function up in the catalog: `sin`, `cos`, `sqrt`,
    /// `exp(c)`, `pow(p)`, `poly(c0,c1,…)`, `1` and `x`.
    pub fn from_catalog(name: &str) -> Result<Self> {
        const OP: &str = "wronskian::catalog";
        let name = name.trim();
        let args = |prefix: &str| -> Option<Result<Vec<f64>>> {
            let inner = name.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')?;
            Some(
                inner
                    .split(',')
                    .map(|s| s.trim().parse::<f64>().map_err(|_| config(OP, format!("bad number `{s}` in `{name}`"))))
                    .collect(),
            )
        };
        let one = |v: Vec<f64>| -> Result<f64> {
            match v[..] {
                [a] if a.is_finite() => Ok(a),
                _ => Err(config(OP, format!("`{name}` takes one finite argument"))),
            }
        };
        match name {
            "sin" => return Ok(Self::sin()),
            "cos" => return Ok(Self::cos()),
            "sqrt" => return Ok(Self::sqrt()),
            "1" => return Ok(Self::polynomial(vec![1.0])),
            "x" => return Ok(Self::polynomial(vec![0.0, 1.0])),
            _ => {}
        }
        if let Some(a) = args("exp") {
            return Ok(Self::exp(one(a?)?));
        }
        if let Some(a) = args("pow") {
            return Ok(Self::power(one(a?)?));
        }
        if let Some(a) = args("poly") {
            return Ok(Self::polynomial(a?));
        }
        Err(config(OP, format!("unknown basis function `{name}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn analytic_derivatives_match_finite_differences() {
        let cases = [
            BasisFunction::sin(),
            BasisFunction::cos(),
            BasisFunction::sqrt(),
            BasisFunction::exp(-1.5),
            BasisFunction::polynomial(vec![1.0, -2.0, 0.5, 3.0]),
            BasisFunction::power(2.5),
        ];
        for b in cases {
            let label = b.label().to_string();
            let inner = b.clone();
            let fd = BasisFunction::finite_difference("fd", move |x| inner.eval(x, 0), FD_STEP);
            for k in 0..=3 {
                for x in [0.6, 0.9, 1.3] {
                    let (a, n) = (b.eval(x, k), fd.eval(x, k));
                    assert!((a - n).abs() < 1e-8 * (1.0 + a.abs()), "{label} k={k} x={x}: {a} vs {n}");
                }
            }
        }
    }

    #[test]
    fn catalog() {
        assert_eq!(BasisFunction::from_catalog("exp(2)").unwrap().eval(0.0, 3), 8.0);
        assert_eq!(BasisFunction::from_catalog("poly(1, 0, 3)").unwrap().eval(2.0, 1), 12.0);
        assert_eq!(BasisFunction::from_catalog("x").unwrap().eval(5.0, 2), 0.0);
        for bad in ["tan", "exp()", "exp(1,2)", "poly(a)", "pow(inf)"] {
            assert!(BasisFunction::from_catalog(bad).is_err(), "{bad}");
        }
    }
}
