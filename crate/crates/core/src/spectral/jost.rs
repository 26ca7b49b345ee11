//! Jost function as the fixed point of
//! `φ(x) = 1 + ∫_x^∞ K(x, x') u(x') φ(x') dx'`,
//! `K(x, x') = (1 − exp[2κ(x − x')]) / (2κ)`.
//!
//! With `κ = k` (the printed kernel) φ solves `φ'' − 2kφ' = uφ`, i.e.
//! `ψ = φe^{−kx}` solves `ψ'' − k²ψ = uψ`. With `κ = ik` it solves
//! `φ'' − 2ikφ' = uφ` and `ψ = φe^{−ikx}` solves `ψ'' + k²ψ = uψ`.

use std::sync::Arc;

use num::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{config, Error, Result};
use crate::io::CsvTable;
use crate::numerics::{integrate, IntegratorConfig};

type C = Complex<f64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum JostConvention {
    /// real exponent `2k(x − x')`
    Printed,
    /// exponent `2ik(x − x')`
    Oscillatory,
}

impl JostConvention {
    fn kappa(self, k: f64) -> C {
        match self {
            JostConvention::Printed => C::new(k, 0.0),
            JostConvention::Oscillatory => C::new(0.0, k),
        }
    }
}

#[derive(Clone)]
pub struct JostProblem {
    pub u: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    pub support: (f64, f64),
    pub k: f64,
    pub pad: f64,
    /// grid spacing upper bound; the support endpoints are always nodes
    pub h: f64,
    pub convention: JostConvention,
}

const OP: &str = "spectral::jost_solve";

impl JostProblem {
    pub fn new(u: impl Fn(f64) -> f64 + Send + Sync + 'static, support: (f64, f64), k: f64) -> Self {
        Self { u: Arc::new(u), support, k, pad: 1.0, h: 2.5e-4, convention: JostConvention::Printed }
    }

    pub fn with_convention(mut self, c: JostConvention) -> Self {
        self.convention = c;
        self
    }

    pub fn with_grid(mut self, pad: f64, h: f64) -> Self {
        self.pad = pad;
        self.h = h;
        self
    }

    /// `amp·𝟙[a, b]`
    pub fn square_well(amp: f64, (a, b): (f64, f64), k: f64) -> Self {
        Self::new(move |x| if (a..=b).contains(&x) { amp } else { 0.0 }, (a, b), k)
    }

    fn validate(&self) -> Result<()> {
        let (a, b) = self.support;
        if !(a < b) || !a.is_finite() || !b.is_finite() {
            return Err(config(OP, format!("support [{a}, {b}] is not a finite interval")));
        }
        if self.k == 0.0 || !self.k.is_finite() {
            return Err(config(OP, "k must be real and nonzero"));
        }
        if !(self.pad >= 0.0) || !(self.h > 0.0) {
            return Err(config(OP, "pad must be ≥ 0 and h > 0"));
        }
        for i in 1..=64 {
            let s = self.pad * i as f64 / 64.0;
            for x in [a - s, b + s] {
                if (self.u)(x).abs() > 1e-14 {
                    return Err(config(OP, format!("u({x}) = {} outside the declared support", (self.u)(x))));
                }
            }
        }
        Ok(())
    }

    /// Nodes on `[a − pad, b + pad]` including both support endpoints.
    pub fn nodes(&self) -> Vec<f64> {
        let (a, b) = self.support;
        let mut xs = vec![a - self.pad];
        for (lo, hi) in [(a - self.pad, a), (a, b), (b, b + self.pad)] {
            if hi <= lo {
                continue;
            }
            let n = ((hi - lo) / self.h).ceil().max(1.0) as usize;
            xs.extend((1..=n).map(|i| if i == n { hi } else { lo + (hi - lo) * i as f64 / n as f64 }));
        }
        xs
    }
}

/// `(1 − e^{2κd})/(2κ)` for `d = x − x' ≤ 0`, by series when `|κd|` is small.
pub fn kernel(kappa: C, d: f64) -> C {
    let z = kappa * (2.0 * d);
    if z.norm() < 1e-4 {
        // −(z + z²/2 + z³/6 + z⁴/24)/(2κ)
        -(C::new(1.0, 0.0) + z / 2.0 + z * z / 6.0 + z * z * z / 24.0) * d
    } else {
        (C::new(1.0, 0.0) - z.exp()) / (kappa * 2.0)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct JostSolution {
    pub k: f64,
    pub convention: JostConvention,
    pub xs: Vec<f64>,
    pub phi: Vec<C>,
    /// `max|φ_{m+1} − φ_m|` per sweep
    pub gaps: Vec<f64>,
    /// `‖u‖₁ · max|K|` over the window
    pub contraction_bound: f64,
}

impl JostSolution {
    pub fn to_csv(&self) -> CsvTable {
        let mut t = CsvTable::new(["x", "re", "im"]);
        for (x, p) in self.xs.iter().zip(&self.phi) {
            t.push(vec![*x, p.re, p.im]);
        }
        t
    }

    pub fn at(&self, x: f64) -> Option<C> {
        self.xs.iter().position(|&v| v == x).map(|i| self.phi[i])
    }
}

/// Neumann iteration with a backward trapezoidal sweep, O(n) per sweep.
/// Samples of `u` are one-sided per cell so jumps at nodes integrate exactly.
pub fn jost_solve(prob: &JostProblem, tol: f64, max_sweeps: usize) -> Result<JostSolution> {
    prob.validate()?;
    let xs = prob.nodes();
    let n = xs.len();
    let kappa = prob.convention.kappa(prob.k);
    // u just right of x_i (for cell i) and just left of x_{i+1}
    let nudge = |a: f64, b: f64| 1e-9 * (b - a);
    let u_right: Vec<f64> = (0..n - 1).map(|i| (prob.u)(xs[i] + nudge(xs[i], xs[i + 1]))).collect();
    let u_left: Vec<f64> = (0..n - 1).map(|i| (prob.u)(xs[i + 1] - nudge(xs[i], xs[i + 1]))).collect();
    let hs: Vec<f64> = xs.windows(2).map(|w| w[1] - w[0]).collect();
    let kcell: Vec<C> = hs.iter().map(|&h| kernel(kappa, -h)).collect();
    let ecell: Vec<C> = hs.iter().map(|&h| (kappa * (-2.0 * h)).exp()).collect();

    let norm1: f64 = (0..n - 1).map(|i| 0.5 * hs[i] * (u_right[i].abs() + u_left[i].abs())).sum();
    let span = xs[n - 1] - xs[0];
    let kmax = (0..=1000).map(|i| kernel(kappa, -span * i as f64 / 1000.0).norm()).fold(0.0, f64::max);
    let contraction_bound = norm1 * kmax;
    if contraction_bound >= 1.0 {
        return Err(Error::Divergence {
            op: OP,
            msg: format!(
                "Neumann series not contracting (‖u‖₁·max|K| = {contraction_bound:.3}); use a smaller potential, analytic continuation is out of scope"
            ),
        });
    }

    let mut phi = vec![C::new(1.0, 0.0); n];
    let mut gaps = Vec::new();
    for _ in 0..max_sweeps {
        let mut next = vec![C::new(1.0, 0.0); n];
        // s1 = ∫_{x_{i+1}}^X uφ, d = ∫_{x_{i+1}}^X K(x_{i+1}, ·) uφ
        let (mut s1, mut d) = (C::new(0.0, 0.0), C::new(0.0, 0.0));
        for i in (0..n - 1).rev() {
            let gl = phi[i + 1] * u_left[i];
            let gr = phi[i] * u_right[i];
            d = kcell[i] * (hs[i] * 0.5 * gl) + kcell[i] * s1 + ecell[i] * d;
            s1 += (gl + gr) * (0.5 * hs[i]);
            next[i] = C::new(1.0, 0.0) + d;
        }
        let gap = next.iter().zip(&phi).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        phi = next;
        gaps.push(gap);
        if gap < tol {
            return Ok(JostSolution { k: prob.k, convention: prob.convention, xs, phi, gaps, contraction_bound });
        }
    }
    Err(Error::Divergence { op: OP, msg: format!("no convergence in {max_sweeps} sweeps (last gap {:e})", gaps.last().unwrap_or(&f64::NAN)) })
}

/// Oracle: `φ'' = 2κφ' + uφ` integrated from `φ = 1, φ' = 0` at the right end
/// of the window by RKF45, piecewise between the support endpoints and any
/// extra `breaks`. Returns `φ` at the requested points.
pub fn jost_ode_oracle(prob: &JostProblem, at: &[f64], breaks: &[f64], tol: f64) -> Result<Vec<C>> {
    prob.validate()?;
    let kappa = prob.convention.kappa(prob.k);
    let right = prob.support.1 + prob.pad;
    let left = prob.support.0 - prob.pad;
    // s = −x; y = (Re φ, Im φ, Re φ_s, Im φ_s); φ_ss = −2κφ_s + uφ
    let rhs = |s: f64, y: &[f64]| -> Result<Vec<f64>> {
        let p = C::new(y[0], y[1]);
        let ps = C::new(y[2], y[3]);
        let a = -(kappa * 2.0) * ps + p * (prob.u)(-s);
        Ok(vec![y[2], y[3], a.re, a.im])
    };
    let mut stops: Vec<f64> = at.iter().chain(breaks).chain([&prob.support.0, &prob.support.1]).copied().collect();
    if stops.iter().any(|&x| x < left || x > right) {
        return Err(config("spectral::jost_ode_oracle", "requested point outside the window"));
    }
    stops.push(left);
    stops.sort_by(|a, b| b.total_cmp(a));
    stops.dedup();
    let cfg = IntegratorConfig { dt: 1e-3, ..IntegratorConfig::rkf45(tol) };
    let mut y = vec![1.0, 0.0, 0.0, 0.0];
    let mut x = right;
    let mut values = Vec::new();
    for &stop in &stops {
        if stop < x {
            // the potential is evaluated strictly inside each piece except at its ends
            y = integrate(&rhs, -x, &y, -stop, &cfg, |_, _| Ok(()))?;
            x = stop;
        }
        values.push((stop, C::new(y[0], y[1])));
    }
    at.iter()
        .map(|p| {
            values
                .iter()
                .find(|(s, _)| s == p)
                .map(|v| v.1)
                .ok_or_else(|| config("spectral::jost_ode_oracle", "point lost"))
        })
        .collect()
}
