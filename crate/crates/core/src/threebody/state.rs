use num::Complex;
use serde::{Deserialize, Serialize};

use super::law::ForceLaw;
use crate::error::{config, Error, Result};
use crate::numerics::{integrate, IntegratorConfig};

pub type C = Complex<f64>;

/// Pairs `(j, k)` with `j < k`.
pub const PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

/// Minimum pairwise distance below which the flow is treated as a collision.
pub const COLLISION_DISTANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThreeBodyState {
    pub z: [C; 3],
    pub v: [C; 3],
    pub t: f64,
}

impl ThreeBodyState {
    pub fn new(z: [C; 3], v: [C; 3]) -> Self {
        Self { z, v, t: 0.0 }
    }

    /// Shifts positions and velocities so both centroids vanish.
    pub fn com_gauge(mut self) -> Self {
        let zc = (self.z[0] + self.z[1] + self.z[2]) / 3.0;
        let vc = (self.v[0] + self.v[1] + self.v[2]) / 3.0;
        for j in 0..3 {
            self.z[j] -= zc;
            self.v[j] -= vc;
        }
        self
    }

    pub fn is_com(&self, tol: f64) -> bool {
        (self.z[0] + self.z[1] + self.z[2]).norm() <= tol && (self.v[0] + self.v[1] + self.v[2]).norm() <= tol
    }

    pub fn to_vec(&self) -> Vec<f64> {
        self.z.iter().chain(self.v.iter()).flat_map(|c| [c.re, c.im]).collect()
    }

    pub fn from_slice(t: f64, y: &[f64]) -> Self {
        let c = |i: usize| C::new(y[2 * i], y[2 * i + 1]);
        Self { z: [c(0), c(1), c(2)], v: [c(3), c(4), c(5)], t }
    }

    pub fn distance(&self, j: usize, k: usize) -> f64 {
        (self.z[j] - self.z[k]).norm()
    }

    pub fn distances(&self) -> [f64; 3] {
        PAIRS.map(|(j, k)| self.distance(j, k))
    }
}

fn check_collision(z: &[C; 3], t: f64) -> Result<()> {
    for (j, k) in PAIRS {
        let d = (z[j] - z[k]).norm();
        if !(d > COLLISION_DISTANCE) {
            return Err(Error::Singularity {
                op: "threebody::rhs",
                t,
                msg: format!("collision of bodies {} and {} (distance {d:e})", j + 1, k + 1),
            });
        }
    }
    Ok(())
}

/// `z̈_j = Σ_{k≠j} z_jk f(|z_jk|²)`.
pub fn rhs(state: &ThreeBodyState, law: &ForceLaw) -> Result<[C; 3]> {
    accelerations(&state.z, state.t, law)
}

fn accelerations(z: &[C; 3], t: f64, law: &ForceLaw) -> Result<[C; 3]> {
    check_collision(z, t)?;
    let mut a = [C::new(0.0, 0.0); 3];
    for (j, k) in PAIRS {
        let zjk = z[j] - z[k];
        let w = zjk * law.f(zjk.norm_sqr());
        a[j] += w;
        a[k] -= w;
    }
    Ok(a)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonitorReport {
    pub com_velocity: C,
    pub energy: f64,
    pub angular_momentum: f64,
    pub inertia_momentum: f64,
    pub lagrange_jacobi_residual: f64,
}

/// `U = Σ F(|z_jk|²)` as a function of the six real coordinates.
fn potential(law: &ForceLaw, xy: &[f64; 6]) -> f64 {
    PAIRS
        .iter()
        .map(|&(j, k)| {
            let (dx, dy) = (xy[2 * j] - xy[2 * k], xy[2 * j + 1] - xy[2 * k + 1]);
            law.big_f(dx * dx + dy * dy)
        })
        .sum()
}

/// `|Σ_j (x_j ∂U/∂x_j + y_j ∂U/∂y_j) − 2 Σ f_jk |z_jk|²|` with the gradient
/// of `U` taken by an eighth-order central difference.
pub fn lagrange_jacobi_residual(state: &ThreeBodyState, law: &ForceLaw) -> f64 {
    const W: [f64; 4] = [4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0];
    let mut xy = [0.0; 6];
    for j in 0..3 {
        xy[2 * j] = state.z[j].re;
        xy[2 * j + 1] = state.z[j].im;
    }
    let scale = state.distances().into_iter().fold(f64::INFINITY, f64::min);
    let h = 1e-3 * scale;
    let mut lhs = 0.0;
    for i in 0..6 {
        let mut d = 0.0;
        for (m, w) in W.iter().enumerate() {
            let off = (m + 1) as f64 * h;
            let mut p = xy;
            p[i] += off;
            let mut q = xy;
            q[i] -= off;
            d += w * (potential(law, &p) - potential(law, &q));
        }
        lhs += xy[i] * d / h;
    }
    let rhs: f64 = PAIRS
        .iter()
        .map(|&(j, k)| {
            let s = (state.z[j] - state.z[k]).norm_sqr();
            2.0 * law.f(s) * s
        })
        .sum();
    (lhs - rhs).abs()
}

pub fn energy(state: &ThreeBodyState, law: &ForceLaw) -> f64 {
    let kin: f64 = state.v.iter().map(|v| v.norm_sqr()).sum();
    let pot: f64 = PAIRS.iter().map(|&(j, k)| law.big_f((state.z[j] - state.z[k]).norm_sqr())).sum();
    kin - pot
}

/// `Im Σ ż_j z̄_j`.
pub fn angular_momentum(state: &ThreeBodyState) -> f64 {
    (0..3).map(|j| (state.v[j] * state.z[j].conj()).im).sum()
}

/// `𝒵 = |z₁₂|² + |z₁₃|² + |z₂₃|²`.
pub fn inertia_momentum(state: &ThreeBodyState) -> f64 {
    PAIRS.iter().map(|&(j, k)| (state.z[j] - state.z[k]).norm_sqr()).sum()
}

pub fn monitors(state: &ThreeBodyState, law: &ForceLaw) -> MonitorReport {
    MonitorReport {
        com_velocity: state.v[0] + state.v[1] + state.v[2],
        energy: energy(state, law),
        angular_momentum: angular_momentum(state),
        inertia_momentum: inertia_momentum(state),
        lagrange_jacobi_residual: lagrange_jacobi_residual(state, law),
    }
}

pub fn default_config() -> IntegratorConfig {
    IntegratorConfig::rkf45(1e-10)
}

/// Integrates the three-body system to `t_end`, recording every accepted
/// step (or every `stride`-th step plus the last one).
pub fn simulate(
    init: &ThreeBodyState,
    law: &ForceLaw,
    t_end: f64,
    cfg: &IntegratorConfig,
    stride: usize,
) -> Result<Vec<ThreeBodyState>> {
    if !t_end.is_finite() {
        return Err(config("threebody::simulate", "final time must be finite"));
    }
    let f = |t: f64, y: &[f64]| -> Result<Vec<f64>> {
        let s = ThreeBodyState::from_slice(t, y);
        let a = accelerations(&s.z, t, law)?;
        let mut out = Vec::with_capacity(12);
        out.extend(s.v.iter().flat_map(|c| [c.re, c.im]));
        out.extend(a.iter().flat_map(|c| [c.re, c.im]));
        Ok(out)
    };
    let mut out = Vec::new();
    let mut count = 0usize;
    let stride = stride.max(1);
    let y = integrate(&f, init.t, &init.to_vec(), t_end, cfg, |t, y| {
        if count % stride == 0 {
            out.push(ThreeBodyState::from_slice(t, y));
        }
        count += 1;
        Ok(())
    })?;
    if out.last().map(|s| s.t) != Some(t_end) {
        out.push(ThreeBodyState::from_slice(t_end, &y));
    }
    Ok(out)
}

/// Maximum deviation of the monitors from their initial values along a
/// trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DriftReport {
    pub energy: f64,
    pub angular_momentum: f64,
    pub com_velocity: f64,
}

pub fn drifts(traj: &[ThreeBodyState], law: &ForceLaw) -> DriftReport {
    let Some(first) = traj.first() else {
        return DriftReport { energy: 0.0, angular_momentum: 0.0, com_velocity: 0.0 };
    };
    let (e0, l0) = (energy(first, law), angular_momentum(first));
    let mut r = DriftReport { energy: 0.0, angular_momentum: 0.0, com_velocity: 0.0 };
    for s in traj {
        r.energy = r.energy.max((energy(s, law) - e0).abs());
        r.angular_momentum = r.angular_momentum.max((angular_momentum(s) - l0).abs());
        r.com_velocity = r.com_velocity.max((s.v[0] + s.v[1] + s.v[2]).norm());
    }
    r
}
