//! Particles on a line with pair potential `U = Σ_{i<j} 1/(x_i − x_j)²`
//! and `ẍ_j = −∂U/∂x_j`.

use serde::{Deserialize, Serialize};

use crate::error::{config, Error, Result};
use crate::numerics::{integrate, IntegratorConfig};

fn check_order(x: &[f64], t: f64) -> Result<()> {
    for (i, w) in x.windows(2).enumerate() {
        if !(w[1] - w[0] > super::state::COLLISION_DISTANCE) {
            return Err(Error::Singularity {
                op: "calogero::rhs",
                t,
                msg: format!("ordering violated between particles {} and {}", i + 1, i + 2),
            });
        }
    }
    Ok(())
}

/// `ẍ_j = Σ_{i≠j} 2/(x_j − x_i)³` for strictly increasing `x`.
pub fn calogero_rhs(x: &[f64]) -> Result<Vec<f64>> {
    check_order(x, f64::NAN)?;
    Ok(accel(x))
}

fn accel(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let mut a = vec![0.0; n];
    for i in 0..n {
        for j in i + 1..n {
            let d = x[i] - x[j];
            let w = 2.0 / (d * d * d);
            a[i] += w;
            a[j] -= w;
        }
    }
    a
}

pub fn calogero_potential(x: &[f64]) -> f64 {
    let mut u = 0.0;
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            u += 1.0 / (x[i] - x[j]).powi(2);
        }
    }
    u
}

pub fn calogero_energy(x: &[f64], v: &[f64]) -> f64 {
    0.5 * v.iter().map(|v| v * v).sum::<f64>() + calogero_potential(x)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CalogeroRun {
    pub t: f64,
    pub x: Vec<f64>,
    pub v: Vec<f64>,
    pub energy_drift: f64,
    pub momentum_drift: f64,
    /// `(t, x, v)` at every `stride`-th accepted step
    pub samples: Vec<(f64, Vec<f64>, Vec<f64>)>,
}

pub fn default_config() -> IntegratorConfig {
    IntegratorConfig::rkf45(1e-12)
}

/// Integrates from `t = 0` to `t_end` (either sign).
pub fn calogero_run(x0: &[f64], v0: &[f64], t_end: f64, cfg: &IntegratorConfig, stride: usize) -> Result<CalogeroRun> {
    const OP: &str = "calogero::run";
    let n = x0.len();
    if n < 2 || v0.len() != n {
        return Err(config(OP, "need at least two particles and matching velocity count"));
    }
    check_order(x0, 0.0)?;
    let rhs = |t: f64, y: &[f64]| -> Result<Vec<f64>> {
        check_order(&y[..n], t)?;
        let mut out = y[n..].to_vec();
        out.extend(accel(&y[..n]));
        Ok(out)
    };
    let e0 = calogero_energy(x0, v0);
    let p0: f64 = v0.iter().sum();
    let mut y0 = x0.to_vec();
    y0.extend_from_slice(v0);
    let (mut de, mut dp): (f64, f64) = (0.0, 0.0);
    let mut samples = Vec::new();
    let mut count = 0usize;
    let stride = stride.max(1);
    let y = integrate(&rhs, 0.0, &y0, t_end, cfg, |t, y| {
        de = de.max((calogero_energy(&y[..n], &y[n..]) - e0).abs());
        dp = dp.max((y[n..].iter().sum::<f64>() - p0).abs());
        if count % stride == 0 {
            samples.push((t, y[..n].to_vec(), y[n..].to_vec()));
        }
        count += 1;
        Ok(())
    })?;
    Ok(CalogeroRun { t: t_end, x: y[..n].to_vec(), v: y[n..].to_vec(), energy_drift: de, momentum_drift: dp, samples })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScatteringReport {
    /// sorted velocities at `t = −T`
    pub incoming: Vec<f64>,
    /// sorted velocities at `t = +T`
    pub outgoing: Vec<f64>,
    pub max_gap: f64,
    pub energy_drift: f64,
    pub momentum_drift: f64,
}

/// Runs backward to `−T` and forward to `+T` from the given data and compares
/// the sorted asymptotic velocity sets.
pub fn calogero_scattering(x0: &[f64], v0: &[f64], big_t: f64, cfg: &IntegratorConfig) -> Result<ScatteringReport> {
    let back = calogero_run(x0, v0, -big_t, cfg, usize::MAX)?;
    let fwd = calogero_run(x0, v0, big_t, cfg, usize::MAX)?;
    let sorted = |v: &[f64]| {
        let mut v = v.to_vec();
        v.sort_by(f64::total_cmp);
        v
    };
    let (incoming, outgoing) = (sorted(&back.v), sorted(&fwd.v));
    let max_gap = incoming.iter().zip(&outgoing).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    Ok(ScatteringReport {
        incoming,
        outgoing,
        max_gap,
        energy_drift: back.energy_drift.max(fwd.energy_drift),
        momentum_drift: back.momentum_drift.max(fwd.momentum_drift),
    })
}
