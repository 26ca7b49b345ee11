use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::law::ForceLaw;
use super::state::{inertia_momentum, simulate, energy, ThreeBodyState, C, PAIRS};
use crate::error::{config, contract, domain, Result};
use crate::numerics::{integrate, IntegratorConfig};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvexitySample {
    pub t: f64,
    /// `Σ|ż_jk|² + Σ f_jk |z_jk|²`
    pub displayed: f64,
    /// `Σ|ż_jk|² + 3 Σ f_jk |z_jk|²`, which equals `½𝒵̈`
    pub exact: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexityReport {
    pub samples: Vec<ConvexitySample>,
    pub min_displayed: f64,
    pub min_exact: f64,
}

pub fn half_inertia_acceleration(state: &ThreeBodyState, law: &ForceLaw) -> (f64, f64) {
    let mut kin = 0.0;
    let mut pot = 0.0;
    for (j, k) in PAIRS {
        kin += (state.v[j] - state.v[k]).norm_sqr();
        let s = (state.z[j] - state.z[k]).norm_sqr();
        pot += law.f(s) * s;
    }
    (kin + pot, kin + 3.0 * pot)
}

/// Convexity of `𝒵` along a trajectory of a repulsive law.
pub fn convexity_audit(traj: &[ThreeBodyState], law: &ForceLaw) -> Result<ConvexityReport> {
    const OP: &str = "threebody::convexity_audit";
    if traj.is_empty() {
        return Err(config(OP, "empty trajectory"));
    }
    let mut samples = Vec::with_capacity(traj.len());
    for s in traj {
        for (j, k) in PAIRS {
            let d2 = (s.z[j] - s.z[k]).norm_sqr();
            if !(law.f(d2) > 0.0) {
                return Err(contract(OP, format!("precondition f > 0 violated: f({d2}) = {} at t = {}", law.f(d2), s.t)));
            }
        }
        let (displayed, exact) = half_inertia_acceleration(s, law);
        samples.push(ConvexitySample { t: s.t, displayed, exact });
    }
    let min_displayed = samples.iter().map(|s| s.displayed).fold(f64::INFINITY, f64::min);
    let min_exact = samples.iter().map(|s| s.exact).fold(f64::INFINITY, f64::min);
    Ok(ConvexityReport { samples, min_displayed, min_exact })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LagrangeOrbit {
    pub state: ThreeBodyState,
    pub side: f64,
    pub radius: f64,
    pub omega: f64,
    pub period: f64,
}

/// Equilateral configuration rotating rigidly; `ω² = −3 f(s²)`.
pub fn lagrange_orbit(law: &ForceLaw, side: f64) -> Result<LagrangeOrbit> {
    const OP: &str = "threebody::lagrange_orbit";
    if !(side > 0.0 && side.is_finite()) {
        return Err(config(OP, "side must be positive"));
    }
    let f = law.f(side * side);
    if !(f < 0.0) {
        return Err(domain(OP, format!("no circular orbit: f(s²) = {f} is not attractive")));
    }
    build_lagrange(side, (-3.0 * f).sqrt())
}

/// As [`lagrange_orbit`] with a requested angular velocity, which must
/// satisfy the balance relation.
pub fn lagrange_orbit_with_omega(law: &ForceLaw, side: f64, omega: f64) -> Result<LagrangeOrbit> {
    let orbit = lagrange_orbit(law, side)?;
    if (omega.abs() - orbit.omega).abs() > 1e-12 * orbit.omega {
        return Err(config(
            "threebody::lagrange_orbit",
            format!("ω = {omega} does not balance the force; required |ω| = {}", orbit.omega),
        ));
    }
    build_lagrange(side, omega)
}

fn build_lagrange(side: f64, omega: f64) -> Result<LagrangeOrbit> {
    let radius = side / 3f64.sqrt();
    let z = [0, 1, 2].map(|j| C::from_polar(radius, 2.0 * PI * j as f64 / 3.0));
    let v = z.map(|zj| C::new(0.0, omega) * zj);
    Ok(LagrangeOrbit {
        state: ThreeBodyState::new(z, v),
        side,
        radius,
        omega,
        period: 2.0 * PI / omega.abs(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EquidistanceReport {
    /// largest `max d − min d` over the three pair distances
    pub max_spread: f64,
    /// largest `|d − s|`
    pub max_side_drift: f64,
    pub equidistant: bool,
}

pub fn equidistance_audit(traj: &[ThreeBodyState], side: f64, tol: f64) -> EquidistanceReport {
    let mut max_spread: f64 = 0.0;
    let mut max_side_drift: f64 = 0.0;
    for s in traj {
        let d = s.distances();
        let hi = d.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let lo = d.iter().cloned().fold(f64::INFINITY, f64::min);
        max_spread = max_spread.max(hi - lo);
        max_side_drift = d.iter().fold(max_side_drift, |m, x| m.max((x - side).abs()));
    }
    EquidistanceReport { max_spread, max_side_drift, equidistant: max_spread < tol && max_side_drift < tol }
}

/// Rigid rotation `v = iωz` of COM-centred positions with `ω` fixed so that
/// the energy for `f = σ/s²` vanishes. Requires `σ < 0`.
pub fn zero_energy_rotation(positions: [C; 3], sigma: f64) -> Result<ThreeBodyState> {
    const OP: &str = "threebody::zero_energy_rotation";
    if !(sigma < 0.0) {
        return Err(domain(OP, "zero-energy rotation needs an attractive law (σ < 0)"));
    }
    let s = ThreeBodyState::new(positions, [C::new(0.0, 0.0); 3]).com_gauge();
    let inv: f64 = PAIRS.iter().map(|&(j, k)| 1.0 / (s.z[j] - s.z[k]).norm_sqr()).sum();
    let r2: f64 = s.z.iter().map(|z| z.norm_sqr()).sum();
    if !(r2 > 0.0 && inv.is_finite()) {
        return Err(config(OP, "positions must be distinct"));
    }
    Ok(rigid_rotation(s.z, (-sigma * inv / r2).sqrt()))
}

pub fn rigid_rotation(positions: [C; 3], omega: f64) -> ThreeBodyState {
    let s = ThreeBodyState::new(positions, [C::new(0.0, 0.0); 3]).com_gauge();
    ThreeBodyState::new(s.z, s.z.map(|z| C::new(0.0, omega) * z))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InertiaReport {
    pub energy: f64,
    pub z0: f64,
    pub dz0: f64,
    /// `max |𝒵(t) − 𝒵(0)|`
    pub drift: f64,
    /// `max |𝒵(t) − (𝒵(0) + 𝒵'(0) t + 3E t²)|`
    pub quadratic_fit_gap: f64,
    pub series: Vec<(f64, f64)>,
}

/// `d𝒵/dt = 2 Σ Re(z̄_jk ż_jk)`.
pub fn inertia_rate(state: &ThreeBodyState) -> f64 {
    PAIRS
        .iter()
        .map(|&(j, k)| 2.0 * ((state.z[j] - state.z[k]).conj() * (state.v[j] - state.v[k])).re)
        .sum()
}

/// Tracks `𝒵(t)` under `f = σ/s²`, where `𝒵̈ = 6E` in the COM frame.
pub fn poincare_inertia_study(
    init: &ThreeBodyState,
    sigma: f64,
    t_end: f64,
    cfg: &IntegratorConfig,
) -> Result<InertiaReport> {
    if !init.is_com(1e-12) {
        return Err(contract("threebody::poincare_inertia_study", "initial data must be in the centre-of-mass frame"));
    }
    let law = ForceLaw::poincare(sigma);
    let traj = simulate(init, &law, t_end, cfg, 1)?;
    let e = energy(init, &law);
    let z0 = inertia_momentum(init);
    let dz0 = inertia_rate(init);
    let mut drift: f64 = 0.0;
    let mut gap: f64 = 0.0;
    let mut series = Vec::with_capacity(traj.len());
    for s in &traj {
        let z = inertia_momentum(s);
        let dt = s.t - init.t;
        drift = drift.max((z - z0).abs());
        gap = gap.max((z - (z0 + dz0 * dt + 3.0 * e * dt * dt)).abs());
        series.push((s.t, z));
    }
    Ok(InertiaReport { energy: e, z0, dz0, drift, quadratic_fit_gap: gap, series })
}

/// Body 1 at rest at the origin, bodies 2 and 3 mirrored through it.
pub fn circular_two_body(law: &ForceLaw, r: f64) -> Result<ThreeBodyState> {
    let g = law.f(r * r) + 2.0 * law.f(4.0 * r * r);
    if !(g < 0.0) {
        return Err(domain("threebody::circular_two_body", format!("no circular orbit: net coefficient {g} ≥ 0")));
    }
    let z = C::new(r, 0.0);
    let v = C::new(0.0, (-g).sqrt()) * z;
    let zero = C::new(0.0, 0.0);
    Ok(ThreeBodyState::new([zero, z, -z], [zero, v, -v]))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoBodyReport {
    pub max_body1: f64,
    /// `max |z₂ − z|` against the reduced equation `z̈ = z (f(|z|²) + 2 f(4|z|²))`
    pub max_reduced_gap: f64,
    pub trajectory: Vec<ThreeBodyState>,
}

fn sample_at<F>(rhs: &F, y0: &[f64], times: &[f64], cfg: &IntegratorConfig) -> Result<Vec<Vec<f64>>>
where
    F: Fn(f64, &[f64]) -> Result<Vec<f64>>,
{
    let mut out = vec![y0.to_vec()];
    for w in times.windows(2) {
        let y = integrate(rhs, w[0], out.last().unwrap(), w[1], cfg, |_, _| Ok(()))?;
        out.push(y);
    }
    Ok(out)
}

pub fn two_body_reduce(init: &ThreeBodyState, law: &ForceLaw, t_end: f64, samples: usize, cfg: &IntegratorConfig) -> Result<TwoBodyReport> {
    const OP: &str = "threebody::two_body_reduce";
    let zero = C::new(0.0, 0.0);
    if init.z[0] != zero || init.v[0] != zero || init.z[1] != -init.z[2] || init.v[1] != -init.v[2] {
        return Err(contract(OP, "data must satisfy z₁ = v₁ = 0, z₂ = −z₃, v₂ = −v₃ exactly"));
    }
    if samples == 0 {
        return Err(config(OP, "need at least one sample"));
    }
    let times: Vec<f64> = (0..=samples).map(|i| init.t + (t_end - init.t) * i as f64 / samples as f64).collect();
    let full = |t: f64, y: &[f64]| -> Result<Vec<f64>> {
        let s = ThreeBodyState::from_slice(t, y);
        let a = super::state::rhs(&s, law)?;
        let mut out: Vec<f64> = s.v.iter().flat_map(|c| [c.re, c.im]).collect();
        out.extend(a.iter().flat_map(|c| [c.re, c.im]));
        Ok(out)
    };
    let reduced = |_t: f64, y: &[f64]| -> Result<Vec<f64>> {
        let r2 = y[0] * y[0] + y[1] * y[1];
        let g = law.f(r2) + 2.0 * law.f(4.0 * r2);
        Ok(vec![y[2], y[3], g * y[0], g * y[1]])
    };
    let ys = sample_at(&full, &init.to_vec(), &times, cfg)?;
    let y0r = [init.z[1].re, init.z[1].im, init.v[1].re, init.v[1].im];
    let yr = sample_at(&reduced, &y0r, &times, cfg)?;
    let mut max_body1: f64 = 0.0;
    let mut gap: f64 = 0.0;
    let mut trajectory = Vec::with_capacity(ys.len());
    for ((t, y), r) in times.iter().zip(&ys).zip(&yr) {
        let s = ThreeBodyState::from_slice(*t, y);
        max_body1 = max_body1.max(s.z[0].norm());
        gap = gap.max((s.z[1] - C::new(r[0], r[1])).norm());
        trajectory.push(s);
    }
    Ok(TwoBodyReport { max_body1, max_reduced_gap: gap, trajectory })
}
