//! Periodic heat solver and the Burgers solution obtained from it.

use num::Complex;
use serde::Serialize;

use crate::error::{config, Error, Result};
use crate::numerics::{dft, idft, rk4_step, spectral_derivative, SampledField, Stencil};
use crate::transforms::{cole_hopf, inverse_cole_hopf};

/// `w_t = w_xx` solved by `ŵ(k) ↦ e^{−k²t} ŵ(k)`.
pub fn heat_solve(u0: &SampledField, t: f64) -> Result<SampledField> {
    heat_solve_with(u0, t, 1.0)
}

/// `w_t = ν w_xx`.
pub fn heat_solve_with(u0: &SampledField, t: f64, nu: f64) -> Result<SampledField> {
    const OP: &str = "spectral::heat_solve";
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::Domain { op: OP, msg: format!("backward heat flow is ill-posed (t = {t})") });
    }
    if !(nu > 0.0) || !nu.is_finite() {
        return Err(config(OP, format!("diffusivity must be positive, got {nu}")));
    }
    if t == 0.0 {
        return Ok(u0.clone());
    }
    let spec = dft(u0)?;
    let out = spec.map_indexed(|j, c| {
        let k = spec.wavenumber(j);
        c * (-nu * k * k * t).exp()
    });
    Ok(idft(&out))
}

/// `u_t = 2uu_x + εu_xx` through `u = ε(log w)_x`, `w_t = εw_xx`.
pub fn burgers_solve(u0: &SampledField, t: f64, eps: f64) -> Result<SampledField> {
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(config("spectral::burgers_solve", format!("viscosity must be positive, got {eps}")));
    }
    let w0 = inverse_cole_hopf(&u0.map(|z| z / eps))?;
    let w = heat_solve_with(&w0, t, eps)?;
    Ok(cole_hopf(&w)?.map(|z| z * eps))
}

/// `2uu_x + εu_xx` with spectral derivatives.
fn burgers_rhs(u: &SampledField, eps: f64) -> Result<SampledField> {
    let sq = u.map(|z| z * z);
    let flux = spectral_derivative(&sq, 1)?;
    let diff = spectral_derivative(u, 2)?;
    let v: Vec<Complex<f64>> = flux.values().iter().zip(diff.values()).map(|(a, b)| a + eps * b).collect();
    SampledField::new(*u.grid(), v)
}

/// Burgers integrated directly by RK4 in time with spectral derivatives in
/// space; independent of the heat-equation route. `dt` is capped by the
/// explicit stability limit of the diffusion term.
pub fn burgers_direct(u0: &SampledField, t: f64, eps: f64, dt: f64) -> Result<SampledField> {
    const OP: &str = "spectral::burgers_direct";
    if !(t >= 0.0) || !(dt > 0.0) || !(eps > 0.0) {
        return Err(config(OP, format!("need t ≥ 0, dt > 0, ε > 0 (t = {t}, dt = {dt}, ε = {eps})")));
    }
    let g = *u0.grid();
    let kmax = std::f64::consts::PI * g.n() as f64 / g.length();
    let dt = dt.min(1.0 / (eps * kmax * kmax));
    let steps = (t / dt).ceil().max(1.0) as usize;
    let h = t / steps as f64;
    let rhs = |_: f64, y: &[f64]| -> Result<Vec<f64>> {
        let u = SampledField::from_real(g, y)?;
        Ok(burgers_rhs(&u, eps)?.real_parts())
    };
    let mut y = u0.real_parts();
    for i in 0..steps {
        y = rk4_step(&rhs, i as f64 * h, &y, h)?;
    }
    SampledField::from_real(g, &y)
}

#[derive(Debug, Clone, Serialize)]
pub struct BurgersReport {
    pub t: f64,
    /// max |u_t − 2uu_x − εu_xx|, `u_t` by central differences in time
    pub residual: f64,
    /// |∫u(t) − ∫u(0)|
    pub mass_drift: f64,
}

/// Residual of the heat-route Burgers solution at time `t`.
pub fn burgers_residual(u0: &SampledField, t: f64, eps: f64) -> Result<BurgersReport> {
    const OP: &str = "spectral::burgers_residual";
    let st = Stencil::central(1, 4)?;
    let mut ht = 1e-3;
    if t < st.half_width as f64 * ht {
        if t <= 0.0 {
            return Err(Error::Domain { op: OP, msg: "time derivative needs t > 0".into() });
        }
        ht = t / st.half_width as f64;
    }
    let u = burgers_solve(u0, t, eps)?;
    let r = st.half_width as i64;
    let mut ut = vec![Complex::new(0.0, 0.0); u.grid().n()];
    for (w, j) in st.weights.iter().zip(-r..=r) {
        if *w == 0.0 {
            continue;
        }
        let s = burgers_solve(u0, t + j as f64 * ht, eps)?;
        ut.iter_mut().zip(s.values()).for_each(|(a, b)| *a += *w * b / ht);
    }
    let rhs = burgers_rhs(&u, eps)?;
    let residual = ut.iter().zip(rhs.values()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    let mass_drift = (u.integral() - u0.integral()).norm();
    Ok(BurgersReport { t, residual, mass_drift })
}
