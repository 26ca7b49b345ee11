//! Cole–Hopf pair between `w_t = w_xx` and `u_t = 2uu_x + u_xx`, the
//! viscosity scaling of Burgers' equation and the reduction of
//! `u_t = φ(u)u_x` to `v_t = v v_x`.

use std::sync::Arc;

use num::Complex;

use crate::error::{config, Error, Result};
use crate::numerics::{bracket_roots, newton_bisect, spectral_antiderivative, spectral_derivative, SampledField};

fn real_values(field: &SampledField, op: &'static str) -> Result<Vec<f64>> {
    let scale = field.max_abs().max(1.0);
    if field.values().iter().any(|v| v.im.abs() > 1e-12 * scale) {
        return Err(config(op, "field must be real"));
    }
    Ok(field.real_parts())
}

/// `u = w_x / w` with a spectral derivative; `w` must be positive.
pub fn cole_hopf(w: &SampledField) -> Result<SampledField> {
    const OP: &str = "transforms::cole_hopf";
    let vals = real_values(w, OP)?;
    if let Some((index, &value)) = vals.iter().enumerate().find(|(_, v)| !(**v > 0.0)) {
        return Err(Error::Positivity { op: OP, index, value });
    }
    let wx = spectral_derivative(w, 1)?;
    let out: Vec<f64> = wx.real_parts().iter().zip(&vals).map(|(d, v)| d / v).collect();
    SampledField::from_real(w.grid().clone(), &out)
}

/// Mean allowed for `u` relative to `1 + max|u|`.
pub const MEAN_TOL: f64 = 1e-10;

/// `w = exp(∫u dx)` normalized to 1 at the first grid point; `u` must have
/// zero mean so that `w` is periodic.
pub fn inverse_cole_hopf(u: &SampledField) -> Result<SampledField> {
    const OP: &str = "transforms::inverse_cole_hopf";
    let vals = real_values(u, OP)?;
    let mean = vals.iter().sum::<f64>() / vals.len() as f64;
    let scale = 1.0 + vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if mean.abs() > MEAN_TOL * scale {
        return Err(Error::Periodicity { op: OP, mean });
    }
    let v = spectral_antiderivative(u)?;
    Ok(v.map(|z| Complex::new(z.re.exp(), 0.0)))
}

/// Coordinates `x̃ = εx`, `t̃ = ε³t`, `u = ε²ũ`, taking solutions of
/// `u_t = 2uu_x + εu_xx` to solutions of `ũ_t̃ = 2ũũ_x̃ + ũ_x̃x̃`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BurgersScaling {
    pub eps: f64,
}

/// A point of the `(x, t, u)` space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Xtu {
    pub x: f64,
    pub t: f64,
    pub u: f64,
}

impl BurgersScaling {
    /// Viscosity-`ε` coordinates to unit-viscosity coordinates.
    pub fn forward(&self, p: Xtu) -> Xtu {
        let e = self.eps;
        Xtu { x: e * p.x, t: e.powi(3) * p.t, u: p.u / (e * e) }
    }

    /// Inverse of [`BurgersScaling::forward`].
    pub fn backward(&self, p: Xtu) -> Xtu {
        let e = self.eps;
        Xtu { x: p.x / e, t: p.t / e.powi(3), u: e * e * p.u }
    }

    /// Unit-viscosity solution `ũ(x̃, t̃)` from a viscosity-`ε` solution `u(x, t)`.
    pub fn transform_solution(&self, u: impl Fn(f64, f64) -> f64) -> impl Fn(f64, f64) -> f64 {
        let s = *self;
        move |xt, tt| {
            let p = s.backward(Xtu { x: xt, t: tt, u: 0.0 });
            s.forward(Xtu { u: u(p.x, p.t), ..p }).u
        }
    }
}

pub fn scale_burgers(eps: f64) -> Result<BurgersScaling> {
    if eps == 0.0 || !eps.is_finite() {
        return Err(Error::Degenerate { op: "transforms::scale_burgers", msg: format!("ε = {eps}") });
    }
    Ok(BurgersScaling { eps })
}

type Scalar = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// `v = φ(u)` for `u_t = φ(u)u_x`, so that `v_t = v v_x`.
#[derive(Clone)]
pub struct InviscidReduction {
    phi: Scalar,
}

impl InviscidReduction {
    pub fn v(&self, u: f64) -> f64 {
        (self.phi)(u)
    }
}

pub fn reduce_to_inviscid(phi: impl Fn(f64) -> f64 + Send + Sync + 'static) -> InviscidReduction {
    InviscidReduction { phi: Arc::new(phi) }
}

/// Characteristic solution of `u_t = φ(u)u_x`: the root of
/// `u = u0(x + φ(u)t)` within `u_range`; several roots mean the
/// characteristics have crossed.
pub fn characteristic_solve(
    u0: impl Fn(f64) -> f64,
    phi: impl Fn(f64) -> f64,
    x: f64,
    t: f64,
    u_range: (f64, f64),
) -> Result<f64> {
    const OP: &str = "transforms::characteristic_solve";
    let g = |u: f64| u - u0(x + phi(u) * t);
    let (lo, hi) = u_range;
    let h = 1e-7 * (hi - lo);
    let dg = |u: f64| (g(u + h) - g(u - h)) / (2.0 * h);
    let brackets = bracket_roots(g, lo, hi, 1024);
    match brackets[..] {
        [] => Err(Error::Domain { op: OP, msg: format!("no root in [{lo}, {hi}] at x = {x}, t = {t}") }),
        [(a, b)] => {
            if a == b {
                Ok(a)
            } else {
                newton_bisect(g, dg, a, b, 1e-15)
            }
        }
        _ => Err(Error::ShockFormed { op: OP, t_break: f64::NAN, roots: brackets.iter().map(|p| p.0).collect() }),
    }
}
