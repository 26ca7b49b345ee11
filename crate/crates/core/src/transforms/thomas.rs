//! `ψ_xy + αψ_x + βψ_y + ψ_xψ_y = 0` linearized by `ψ = log θ`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{config, Error, Result};
use crate::numerics::Stencil;

/// Samples on a closed rectangle, `values[j * nx + i]` at `(x_i, y_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Field2D {
    pub nx: usize,
    pub ny: usize,
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
    pub values: Vec<f64>,
}

impl Field2D {
    pub fn from_fn(n: (usize, usize), x_range: (f64, f64), y_range: (f64, f64), f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        let (nx, ny) = n;
        if nx < 2 || ny < 2 || !(x_range.0 < x_range.1) || !(y_range.0 < y_range.1) {
            return Err(config("transforms::field2d", "need at least 2×2 samples on a non-empty rectangle"));
        }
        let mut v = Self { nx, ny, x_range, y_range, values: Vec::with_capacity(nx * ny) };
        for j in 0..ny {
            for i in 0..nx {
                let val = f(v.x(i), v.y(j));
                v.values.push(val);
            }
        }
        Ok(v)
    }

    pub fn hx(&self) -> f64 {
        (self.x_range.1 - self.x_range.0) / (self.nx - 1) as f64
    }

    pub fn hy(&self) -> f64 {
        (self.y_range.1 - self.y_range.0) / (self.ny - 1) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x_range.0 + i as f64 * self.hx()
    }

    pub fn y(&self, j: usize) -> f64 {
        self.y_range.0 + j as f64 * self.hy()
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[j * self.nx + i]
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self { values: self.values.iter().map(|&v| f(v)).collect(), ..self.clone() }
    }
}

/// Derivatives at interior samples by central stencils.
struct Fd {
    d1: Stencil,
}

impl Fd {
    fn new(accuracy: usize) -> Result<Self> {
        Ok(Self { d1: Stencil::central(1, accuracy)? })
    }

    fn offsets(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        let r = self.d1.half_width as i64;
        (-r..=r).zip(self.d1.weights.iter().copied()).filter(|(_, w)| *w != 0.0)
    }

    fn dx(&self, f: &Field2D, i: usize, j: usize) -> f64 {
        self.offsets().map(|(k, w)| w * f.at((i as i64 + k) as usize, j)).sum::<f64>() / f.hx()
    }

    fn dy(&self, f: &Field2D, i: usize, j: usize) -> f64 {
        self.offsets().map(|(k, w)| w * f.at(i, (j as i64 + k) as usize)).sum::<f64>() / f.hy()
    }

    fn dxy(&self, f: &Field2D, i: usize, j: usize) -> f64 {
        let mut acc = 0.0;
        for (a, wa) in self.offsets() {
            for (b, wb) in self.offsets() {
                acc += wa * wb * f.at((i as i64 + a) as usize, (j as i64 + b) as usize);
            }
        }
        acc / (f.hx() * f.hy())
    }

    /// Max of `|r(ψ, ψ_x, ψ_y, ψ_xy)|` over samples where the stencil fits.
    fn max_residual(&self, f: &Field2D, r: impl Fn(f64, f64, f64, f64) -> f64) -> Result<f64> {
        let m = self.d1.half_width;
        if f.nx <= 2 * m || f.ny <= 2 * m {
            return Err(config("transforms::thomas_residual", "grid too small for the stencil"));
        }
        let mut worst = 0.0f64;
        for j in m..f.ny - m {
            for i in m..f.nx - m {
                let v = r(f.at(i, j), self.dx(f, i, j), self.dy(f, i, j), self.dxy(f, i, j));
                worst = worst.max(v.abs());
            }
        }
        Ok(worst)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThomasParams {
    pub alpha: f64,
    pub beta: f64,
    pub k1: f64,
    pub k2: f64,
}

impl ThomasParams {
    /// Sets `k2 = −(k1 + α)`.
    pub fn new(alpha: f64, beta: f64, k1: f64) -> Self {
        Self { alpha, beta, k1, k2: -(k1 + alpha) }
    }

    pub fn check(&self) -> Result<()> {
        let k2 = -(self.k1 + self.alpha);
        if (self.k2 - k2).abs() > 1e-14 * (1.0 + k2.abs()) {
            return Err(config("transforms::thomas_params", format!("k2 = {} but −(k1 + α) = {k2}", self.k2)));
        }
        Ok(())
    }
}

/// `θ = e^ψ`.
pub fn thomas_linearize(psi: &Field2D) -> Field2D {
    psi.map(f64::exp)
}

/// `ψ = log θ`; every sample of `θ` must be positive.
pub fn thomas_delinearize(theta: &Field2D) -> Result<Field2D> {
    if let Some((index, &value)) = theta.values.iter().enumerate().find(|(_, v)| !(**v > 0.0)) {
        return Err(Error::Positivity { op: "transforms::thomas_delinearize", index, value });
    }
    Ok(theta.map(f64::ln))
}

/// Max |ψ_xy + αψ_x + βψ_y + ψ_xψ_y| by central differences.
pub fn thomas_residual(psi: &Field2D, alpha: f64, beta: f64, accuracy: usize) -> Result<f64> {
    Fd::new(accuracy)?.max_residual(psi, |_, px, py, pxy| pxy + alpha * px + beta * py + px * py)
}

/// Max |θ_xy + αθ_x + βθ_y| by central differences.
pub fn linear_residual(theta: &Field2D, alpha: f64, beta: f64, accuracy: usize) -> Result<f64> {
    Fd::new(accuracy)?.max_residual(theta, |_, tx, ty, txy| txy + alpha * tx + beta * ty)
}

/// Max |φ_xy + (k1 + α)φ_x| by central differences.
pub fn reduced_residual(phi: &Field2D, params: &ThomasParams, accuracy: usize) -> Result<f64> {
    let c = params.k1 + params.alpha;
    Fd::new(accuracy)?.max_residual(phi, |_, px, _, pxy| pxy + c * px)
}

type Scalar = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// `φ = f̂(y) + e^{k2 y} h(x)`, `θ = φ e^{k1 y}`, `ψ = log θ`.
#[derive(Clone)]
pub struct ThomasSolution {
    pub params: ThomasParams,
    fhat: Scalar,
    h: Scalar,
}

impl ThomasSolution {
    pub fn phi(&self, x: f64, y: f64) -> f64 {
        (self.fhat)(y) + (self.params.k2 * y).exp() * (self.h)(x)
    }

    pub fn theta(&self, x: f64, y: f64) -> f64 {
        self.phi(x, y) * (self.params.k1 * y).exp()
    }

    /// `NaN` where `θ ≤ 0`.
    pub fn psi(&self, x: f64, y: f64) -> f64 {
        let t = self.theta(x, y);
        if t > 0.0 {
            t.ln()
        } else {
            f64::NAN
        }
    }
}

/// General solution of the linearized equation in the `β = 0` case.
pub fn thomas_general_solution(
    params: ThomasParams,
    fhat: impl Fn(f64) -> f64 + Send + Sync + 'static,
    h: impl Fn(f64) -> f64 + Send + Sync + 'static,
) -> Result<ThomasSolution> {
    params.check()?;
    if params.beta != 0.0 {
        return Err(config(
            "transforms::thomas_general_solution",
            format!("only β = 0 is supported, got β = {}", params.beta),
        ));
    }
    Ok(ThomasSolution { params, fhat: Arc::new(fhat), h: Arc::new(h) })
}
