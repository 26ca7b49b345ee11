use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numerics::{integrate, IntegratorConfig, Rhs};

/// A conserved quantity evaluated on `(t, state)`; may be non-polynomial.
#[derive(Clone)]
pub struct NumericCl {
    pub label: String,
    eval: Arc<dyn Fn(f64, &[f64]) -> f64 + Send + Sync>,
}

impl fmt::Debug for NumericCl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NumericCl").field("label", &self.label).finish()
    }
}

impl NumericCl {
    pub fn new(label: impl Into<String>, eval: impl Fn(f64, &[f64]) -> f64 + Send + Sync + 'static) -> Self {
        Self { label: label.into(), eval: Arc::new(eval) }
    }

    pub fn eval(&self, t: f64, y: &[f64]) -> f64 {
        (self.eval)(t, y)
    }
}

/// Integrates from `t0` to `t_end` and returns `max |F(t) − F(t0)|` over the
/// accepted steps. Leaving the domain of `F` is a domain error.
pub fn cl_drift(
    rhs: &impl Rhs,
    cl: &NumericCl,
    y0: &[f64],
    t0: f64,
    t_end: f64,
    cfg: &IntegratorConfig,
) -> Result<f64> {
    const OP: &str = "symmetry::cl_drift";
    let check = |t: f64, y: &[f64]| {
        let v = cl.eval(t, y);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Domain { op: OP, msg: format!("`{}` left its domain at t = {t}", cl.label) })
        }
    };
    let f0 = check(t0, y0)?;
    let mut worst = 0.0f64;
    integrate(rhs, t0, y0, t_end, cfg, |t, y| {
        worst = worst.max((check(t, y)? - f0).abs());
        Ok(())
    })?;
    Ok(worst)
}
