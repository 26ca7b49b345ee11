//! `y'' = f(y)` reduced to the separable first-order equation
//! `dx = ± dy / √(2(F(y) + E))`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{config, Error, Result};
use crate::io::CsvTable;
use crate::numerics::{bracket_roots, newton_bisect, quadrature};

type Scalar = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Sign of `y'` along the solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    Increasing,
    Decreasing,
}

impl Branch {
    fn sign(self) -> f64 {
        match self {
            Branch::Increasing => 1.0,
            Branch::Decreasing => -1.0,
        }
    }
}

#[derive(Clone)]
pub struct QuadratureProblem {
    pub f: Scalar,
    /// antiderivative of `f`
    pub big_f: Scalar,
    pub energy: f64,
    pub y_range: (f64, f64),
    pub branch: Branch,
    /// the solution passes through `(x, y) = anchor`
    pub anchor: (f64, f64),
}

const TOL: f64 = 1e-13;
const OP: &str = "transforms::quadrature_reduce";

impl QuadratureProblem {
    pub fn new(
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        big_f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        energy: f64,
        y_range: (f64, f64),
        branch: Branch,
        anchor: (f64, f64),
    ) -> Result<Self> {
        let (lo, hi) = y_range;
        if !(lo < hi && lo.is_finite() && hi.is_finite()) {
            return Err(config(OP, format!("y range [{lo}, {hi}] is not a finite interval")));
        }
        if !(anchor.1 >= lo && anchor.1 <= hi && anchor.0.is_finite()) {
            return Err(config(OP, format!("anchor y = {} lies outside [{lo}, {hi}]", anchor.1)));
        }
        let p = Self { f: Arc::new(f), big_f: Arc::new(big_f), energy, y_range, branch, anchor };
        p.check()?;
        Ok(p)
    }

    fn kinetic(&self, y: f64) -> f64 {
        2.0 * ((self.big_f)(y) + self.energy)
    }

    /// `F' = f` (central differences) and `2(F + E) > 0` inside the range.
    fn check(&self) -> Result<()> {
        let (lo, hi) = self.y_range;
        let n = 512;
        let h = 1e-5 * (hi - lo);
        for i in 1..n {
            let y = lo + (hi - lo) * i as f64 / n as f64;
            let fd = ((self.big_f)(y + h) - (self.big_f)(y - h)) / (2.0 * h);
            let fy = (self.f)(y);
            if (fd - fy).abs() > 1e-5 * (1.0 + fy.abs()) {
                return Err(config(OP, format!("F' = {fd} but f = {fy} at y = {y}; F is not an antiderivative")));
            }
        }
        let k = |y: f64| self.kinetic(y);
        let bad = (1..n).map(|i| lo + (hi - lo) * i as f64 / n as f64).find(|&y| !(k(y) > 0.0));
        if let Some(y) = bad {
            let root = bracket_roots(k, lo, hi, n)
                .into_iter()
                .find(|&(a, b)| a > lo && b < hi)
                .map(|(a, b)| if a == b { a } else { bisect(k, a, b) })
                .unwrap_or(y);
            return Err(Error::Domain {
                op: OP,
                msg: format!("turning point: F + E vanishes at y = {root} inside the range"),
            });
        }
        Ok(())
    }

    /// `x(y)` on the chosen branch through the anchor.
    pub fn x_at(&self, y: f64) -> Result<f64> {
        let (lo, hi) = self.y_range;
        if !(y >= lo && y <= hi) {
            return Err(Error::Domain { op: OP, msg: format!("y = {y} outside [{lo}, {hi}]") });
        }
        let (xa, ya) = self.anchor;
        let integral = quadrature(|s| 1.0 / self.kinetic(s).sqrt(), ya, y, TOL)?;
        Ok(xa + self.branch.sign() * integral)
    }

    /// `y(x)` by safeguarded Newton on `x(y)`.
    pub fn y_at(&self, x: f64) -> Result<f64> {
        let (lo, hi) = self.y_range;
        let (xl, xh) = (self.x_at(lo)?, self.x_at(hi)?);
        let (xmin, xmax) = (xl.min(xh), xl.max(xh));
        if !(x >= xmin && x <= xmax) {
            return Err(Error::Domain { op: OP, msg: format!("x = {x} outside the reachable range [{xmin}, {xmax}]") });
        }
        let g = |y: f64| self.x_at(y).map(|v| v - x).unwrap_or(f64::NAN);
        let dg = |y: f64| self.branch.sign() / self.kinetic(y).sqrt();
        newton_bisect(g, dg, lo, hi, 1e-15)
    }

    /// `(y, x(y))` on `samples` equally spaced values of `y`.
    pub fn table(&self, samples: usize) -> Result<CsvTable> {
        let (lo, hi) = self.y_range;
        let mut t = CsvTable::new(["y", "x"]);
        for i in 0..samples.max(2) {
            let y = lo + (hi - lo) * i as f64 / (samples.max(2) - 1) as f64;
            t.push(vec![y, self.x_at(y)?]);
        }
        Ok(t)
    }
}

fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let fa = f(a);
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        if (f(m) > 0.0) == (fa > 0.0) {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Convenience constructor mirroring the operation's signature.
pub fn quadrature_reduce(
    f: impl Fn(f64) -> f64 + Send + Sync + 'static,
    big_f: impl Fn(f64) -> f64 + Send + Sync + 'static,
    y_range: (f64, f64),
    energy: f64,
    branch: Branch,
    anchor: (f64, f64),
) -> Result<QuadratureProblem> {
    QuadratureProblem::new(f, big_f, energy, y_range, branch, anchor)
}
