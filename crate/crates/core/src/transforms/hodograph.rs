//! Implicit solution `x + 2tu = φ(u)` of `u_t = 2uu_x`.

use std::sync::Arc;

use crate::error::{config, Error, Result};
use crate::numerics::{bracket_roots, newton_bisect};

type Scalar = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Samples used for monotonicity checks, breaking time and root bracketing.
pub const PROFILE_SAMPLES: usize = 1024;

/// Initial profile `x = φ(u)` on `[u_lo, u_hi]` with `φ'` of one sign.
#[derive(Clone)]
pub struct MonotoneProfile {
    phi: Scalar,
    dphi: Scalar,
    domain: (f64, f64),
    increasing: bool,
}

impl std::fmt::Debug for MonotoneProfile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MonotoneProfile")
            .field("domain", &self.domain)
            .field("increasing", &self.increasing)
            .finish()
    }
}

impl MonotoneProfile {
    pub fn new(
        phi: impl Fn(f64) -> f64 + Send + Sync + 'static,
        dphi: impl Fn(f64) -> f64 + Send + Sync + 'static,
        domain: (f64, f64),
    ) -> Result<Self> {
        const OP: &str = "transforms::monotone_profile";
        let (lo, hi) = domain;
        if !(lo < hi && lo.is_finite() && hi.is_finite()) {
            return Err(config(OP, format!("domain [{lo}, {hi}] is not a finite interval")));
        }
        let samples: Vec<f64> = sample(domain).map(&dphi).collect();
        let increasing = samples.iter().all(|&d| d > 0.0);
        if !increasing && !samples.iter().all(|&d| d < 0.0) {
            return Err(config(OP, "φ' changes sign or vanishes on the domain"));
        }
        Ok(Self { phi: Arc::new(phi), dphi: Arc::new(dphi), domain, increasing })
    }

    /// Named profiles: `linear` (φ = u), `cubic` (φ = u³ + u), `sinh`.
    pub fn named(name: &str, domain: (f64, f64)) -> Result<Self> {
        match name {
            "linear" => Self::new(|u| u, |_| 1.0, domain),
            "cubic" => Self::new(|u| u * u * u + u, |u| 3.0 * u * u + 1.0, domain),
            "sinh" => Self::new(f64::sinh, f64::cosh, domain),
            other => Err(config("transforms::monotone_profile", format!("unknown profile `{other}`"))),
        }
    }

    pub fn phi(&self, u: f64) -> f64 {
        (self.phi)(u)
    }

    pub fn dphi(&self, u: f64) -> f64 {
        (self.dphi)(u)
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn is_increasing(&self) -> bool {
        self.increasing
    }

    /// First time at which `φ'(u) = 2t` somewhere on the domain:
    /// `min φ'/2` for increasing profiles, `max φ'/2 < 0` (backward in time)
    /// for decreasing ones.
    pub fn breaking_time(&self) -> f64 {
        // minimize s·φ'/2 on the samples, then refine by golden section
        let s = if self.increasing { 1.0 } else { -1.0 };
        let g = |u: f64| s * 0.5 * self.dphi(u);
        let us: Vec<f64> = sample(self.domain).collect();
        let best = (0..us.len()).min_by(|&a, &b| g(us[a]).total_cmp(&g(us[b]))).unwrap_or(0);
        let (mut a, mut b) = (us[best.saturating_sub(1)], us[(best + 1).min(us.len() - 1)]);
        let r = 0.5 * (5f64.sqrt() - 1.0);
        for _ in 0..100 {
            let (c, d) = (b - r * (b - a), a + r * (b - a));
            if g(c) < g(d) {
                b = d;
            } else {
                a = c;
            }
        }
        s * g(0.5 * (a + b)).min(g(us[best]))
    }

    fn is_broken(&self, t: f64) -> bool {
        let tb = self.breaking_time();
        if self.increasing {
            t >= tb
        } else {
            t <= tb
        }
    }
}

fn sample(domain: (f64, f64)) -> impl Iterator<Item = f64> {
    let (lo, hi) = domain;
    let n = PROFILE_SAMPLES - 1;
    (0..=n).map(move |i| lo + (hi - lo) * i as f64 / n as f64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct HodographSolution {
    pub u: f64,
    /// `|φ(u) − 2tu − x|`
    pub residual: f64,
    pub breaking_time: f64,
}

/// Root of `φ(u) − 2tu − x = 0` on the profile domain.
pub fn hodograph_solve(profile: &MonotoneProfile, x: f64, t: f64) -> Result<HodographSolution> {
    const OP: &str = "transforms::hodograph_solve";
    let g = |u: f64| profile.phi(u) - 2.0 * t * u - x;
    let dg = |u: f64| profile.dphi(u) - 2.0 * t;
    let (lo, hi) = profile.domain;
    let mut roots = Vec::new();
    for (a, b) in bracket_roots(g, lo, hi, PROFILE_SAMPLES) {
        roots.push(if a == b { a } else { newton_bisect(g, dg, a, b, 1e-16)? });
    }
    roots.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * (1.0 + a.abs()));
    let breaking_time = profile.breaking_time();
    match roots[..] {
        [] => Err(Error::Domain {
            op: OP,
            msg: format!("x = {x} is not reached at t = {t} from u in [{lo}, {hi}]"),
        }),
        [u] => {
            let residual = g(u).abs();
            let scale = 1.0 + x.abs() + (2.0 * t * u).abs() + profile.phi(u).abs();
            if residual > 1e-12 * scale {
                return Err(Error::Accuracy { op: OP, msg: format!("residual {residual:e} at u = {u}") });
            }
            Ok(HodographSolution { u, residual, breaking_time })
        }
        _ => Err(Error::ShockFormed { op: OP, t_break: breaking_time, roots }),
    }
}

/// `true` once `t` has reached the breaking time of the profile.
pub fn has_broken(profile: &MonotoneProfile, t: f64) -> bool {
    profile.is_broken(t)
}
