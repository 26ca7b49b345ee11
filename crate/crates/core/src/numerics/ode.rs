//! Explicit Runge–Kutta integrators: classical fixed-step RK4 and
//! Runge–Kutta–Fehlberg 4(5) with a PI step-size controller.

use serde::{Deserialize, Serialize};

use crate::error::{config, Error, Result};

/// Right-hand side `y' = f(t, y)`; may fail (e.g. collisions).
pub trait Rhs {
    fn eval(&self, t: f64, y: &[f64]) -> Result<Vec<f64>>;
}

impl<F> Rhs for F
where
    F: Fn(f64, &[f64]) -> Result<Vec<f64>>,
{
    fn eval(&self, t: f64, y: &[f64]) -> Result<Vec<f64>> {
        self(t, y)
    }
}

/// Wraps an infallible closure.
pub fn plain<F>(f: F) -> impl Rhs
where
    F: Fn(f64, &[f64]) -> Vec<f64>,
{
    move |t: f64, y: &[f64]| Ok(f(t, y))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Rk4Fixed,
    Rkf45Adaptive,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegratorConfig {
    /// fixed step for RK4, initial step for RKF45
    pub dt: f64,
    pub method: Method,
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_steps: usize,
}

impl IntegratorConfig {
    pub fn rk4(dt: f64) -> Self {
        Self {
            dt,
            method: Method::Rk4Fixed,
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_steps: usize::MAX,
        }
    }

    pub fn rkf45(tol: f64) -> Self {
        Self {
            dt: 1e-3,
            method: Method::Rkf45Adaptive,
            abs_tol: tol,
            rel_tol: tol,
            max_steps: 10_000_000,
        }
    }

    pub fn validate(&self) -> Result<()> {
        const OP: &str = "numerics::integrate";
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(config(OP, format!("dt must be positive, got {}", self.dt)));
        }
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(config(OP, "tolerances must be positive"));
        }
        Ok(())
    }
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        Self::rk4(1e-3)
    }
}

fn check_finite(op: &'static str, t: f64, v: &[f64]) -> Result<()> {
    if v.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::Singularity {
            op,
            t,
            msg: "right-hand side is not finite".into(),
        })
    }
}

fn axpy(y: &[f64], a: f64, k: &[f64]) -> Vec<f64> {
    y.iter().zip(k).map(|(y, k)| y + a * k).collect()
}

fn combo(y: &[f64], h: f64, terms: &[(f64, &[f64])]) -> Vec<f64> {
    let mut out = y.to_vec();
    for (c, k) in terms {
        if *c != 0.0 {
            for (o, ki) in out.iter_mut().zip(k.iter()) {
                *o += h * c * ki;
            }
        }
    }
    out
}

/// One classical RK4 step from `(t, y)`.
pub fn rk4_step(rhs: &impl Rhs, t: f64, y: &[f64], dt: f64) -> Result<Vec<f64>> {
    const OP: &str = "numerics::rk4_step";
    let k1 = rhs.eval(t, y)?;
    check_finite(OP, t, &k1)?;
    let k2 = rhs.eval(t + 0.5 * dt, &axpy(y, 0.5 * dt, &k1))?;
    check_finite(OP, t + 0.5 * dt, &k2)?;
    let k3 = rhs.eval(t + 0.5 * dt, &axpy(y, 0.5 * dt, &k2))?;
    check_finite(OP, t + 0.5 * dt, &k3)?;
    let k4 = rhs.eval(t + dt, &axpy(y, dt, &k3))?;
    check_finite(OP, t + dt, &k4)?;
    Ok(y
        .iter()
        .enumerate()
        .map(|(i, yi)| yi + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
        .collect())
}

// Fehlberg tableau
const A: [[f64; 5]; 6] = [
    [0.0, 0.0, 0.0, 0.0, 0.0],
    [1.0 / 4.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 32.0, 9.0 / 32.0, 0.0, 0.0, 0.0],
    [1932.0 / 2197.0, -7200.0 / 2197.0, 7296.0 / 2197.0, 0.0, 0.0],
    [439.0 / 216.0, -8.0, 3680.0 / 513.0, -845.0 / 4104.0, 0.0],
    [-8.0 / 27.0, 2.0, -3544.0 / 2565.0, 1859.0 / 4104.0, -11.0 / 40.0],
];
const C: [f64; 6] = [0.0, 1.0 / 4.0, 3.0 / 8.0, 12.0 / 13.0, 1.0, 1.0 / 2.0];
const B5: [f64; 6] = [16.0 / 135.0, 0.0, 6656.0 / 12825.0, 28561.0 / 56430.0, -9.0 / 50.0, 2.0 / 55.0];
const B4: [f64; 6] = [25.0 / 216.0, 0.0, 1408.0 / 2565.0, 2197.0 / 4104.0, -1.0 / 5.0, 0.0];

/// One embedded RKF45 step; returns the fifth-order solution and the max-norm
/// of the scaled error estimate (≤ 1 means acceptable).
pub fn rkf45_step(rhs: &impl Rhs, t: f64, y: &[f64], h: f64, cfg: &IntegratorConfig) -> Result<(Vec<f64>, f64)> {
    const OP: &str = "numerics::rkf45_step";
    let mut k: Vec<Vec<f64>> = Vec::with_capacity(6);
    for s in 0..6 {
        let terms: Vec<(f64, &[f64])> = (0..s).map(|j| (A[s][j], k[j].as_slice())).collect();
        let ys = combo(y, h, &terms);
        let ks = rhs.eval(t + C[s] * h, &ys)?;
        check_finite(OP, t + C[s] * h, &ks)?;
        k.push(ks);
    }
    let mut y5 = y.to_vec();
    let mut err: f64 = 0.0;
    for i in 0..y.len() {
        let mut s5 = 0.0;
        let mut s4 = 0.0;
        for s in 0..6 {
            s5 += B5[s] * k[s][i];
            s4 += B4[s] * k[s][i];
        }
        y5[i] += h * s5;
        let sc = cfg.abs_tol + cfg.rel_tol * y[i].abs().max(y5[i].abs());
        let e = h * (s5 - s4) / sc;
        err = err.max(e.abs());
    }
    Ok((y5, err))
}

/// Integrates from `t0` to `t_end`, calling `observe(t, y)` after the initial
/// state and after every accepted step. The final step lands on `t_end`.
pub fn integrate(
    rhs: &impl Rhs,
    t0: f64,
    y0: &[f64],
    t_end: f64,
    cfg: &IntegratorConfig,
    mut observe: impl FnMut(f64, &[f64]) -> Result<()>,
) -> Result<Vec<f64>> {
    cfg.validate()?;
    let dir = if t_end >= t0 { 1.0 } else { -1.0 };
    let span = (t_end - t0).abs();
    let mut t = t0;
    let mut y = y0.to_vec();
    observe(t, &y)?;
    if span == 0.0 {
        return Ok(y);
    }
    match cfg.method {
        Method::Rk4Fixed => {
            let steps = (span / cfg.dt).round().max(1.0) as usize;
            let h = dir * span / steps as f64;
            for i in 0..steps {
                y = rk4_step(rhs, t, &y, h)?;
                t = t0 + (i + 1) as f64 * h;
                observe(t, &y)?;
            }
        }
        Method::Rkf45Adaptive => {
            const SAFETY: f64 = 0.9;
            const ALPHA: f64 = 0.7 / 5.0;
            const BETA: f64 = 0.4 / 5.0;
            let mut h = cfg.dt.min(span);
            let mut err_prev: f64 = 1.0;
            let mut steps = 0usize;
            while (t_end - t) * dir > 0.0 {
                if steps >= cfg.max_steps {
                    return Err(Error::Accuracy {
                        op: "numerics::integrate",
                        msg: format!("step budget {} exhausted at t = {t}", cfg.max_steps),
                    });
                }
                steps += 1;
                let remaining = (t_end - t).abs();
                let last = h >= remaining;
                let hs = if last { remaining } else { h };
                let (y_new, err) = rkf45_step(rhs, t, &y, dir * hs, cfg)?;
                if err <= 1.0 {
                    t = if last { t_end } else { t + dir * hs };
                    y = y_new;
                    observe(t, &y)?;
                    let e = err.max(1e-10);
                    let fac = SAFETY * e.powf(-ALPHA) * err_prev.powf(BETA);
                    h = hs * fac.clamp(0.2, 5.0);
                    err_prev = e;
                } else {
                    let fac = SAFETY * err.powf(-0.2);
                    h = hs * fac.clamp(0.1, 1.0);
                }
                if h < 1e-14 * t.abs().max(1.0) {
                    return Err(Error::Singularity {
                        op: "numerics::integrate",
                        t,
                        msg: format!("step size collapsed to {h:e}"),
                    });
                }
            }
        }
    }
    Ok(y)
}
