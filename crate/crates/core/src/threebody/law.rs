//! Pair force densities `f(s)` of the squared distance `s = |z|²`,
//! together with an antiderivative `F` (`F' = f`).

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{config, Result};

type Scalar = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Serializable description of a force law. `f < 0` is attractive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "law")]
pub enum LawSpec {
    /// `f = σ/s²`
    Poincare { sigma: f64 },
    /// `f = c·s^p`
    Power { c: f64, p: f64 },
    /// `f = −1/s^{3/2}`, inverse-square attraction
    NewtonLike,
}

#[derive(Clone)]
pub struct ForceLaw {
    pub label: String,
    f: Scalar,
    big_f: Scalar,
}

impl std::fmt::Debug for ForceLaw {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ForceLaw").field("label", &self.label).finish()
    }
}

impl ForceLaw {
    /// Custom law; `F' = f` is checked by central differences at sample
    /// points of `s_range`.
    pub fn custom(
        label: impl Into<String>,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        big_f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        s_range: (f64, f64),
    ) -> Result<Self> {
        let law = Self { label: label.into(), f: Arc::new(f), big_f: Arc::new(big_f) };
        let (lo, hi) = s_range;
        if !(lo > 0.0 && hi > lo) {
            return Err(config("threebody::force_law", "sample range must satisfy 0 < lo < hi"));
        }
        for i in 0..=32 {
            let s = lo * (hi / lo).powf(i as f64 / 32.0);
            let h = 1e-4 * s;
            let fd = (law.big_f(s + h) - law.big_f(s - h)) / (2.0 * h);
            let fs = law.f(s);
            if (fd - fs).abs() > 1e-8 * (1.0 + fs.abs()) {
                return Err(config(
                    "threebody::force_law",
                    format!("F' = {fd} but f = {fs} at s = {s}; F is not an antiderivative"),
                ));
            }
        }
        Ok(law)
    }

    pub fn poincare(sigma: f64) -> Self {
        Self { label: format!("poincare(σ={sigma})"), f: Arc::new(move |s| sigma / (s * s)), big_f: Arc::new(move |s| -sigma / s) }
    }

    pub fn power(c: f64, p: f64) -> Self {
        let big_f: Scalar = if p == -1.0 {
            Arc::new(move |s: f64| c * s.ln())
        } else {
            Arc::new(move |s: f64| c * s.powf(p + 1.0) / (p + 1.0))
        };
        Self { label: format!("power(c={c}, p={p})"), f: Arc::new(move |s: f64| c * s.powf(p)), big_f }
    }

    pub fn newton_like() -> Self {
        Self { label: "newton-like".into(), ..Self::power(-1.0, -1.5) }
    }

    pub fn from_spec(spec: &LawSpec) -> Self {
        match *spec {
            LawSpec::Poincare { sigma } => Self::poincare(sigma),
            LawSpec::Power { c, p } => Self::power(c, p),
            LawSpec::NewtonLike => Self::newton_like(),
        }
    }

    /// The same law multiplied by `k`.
    pub fn scaled(&self, k: f64) -> Self {
        let (f, big_f) = (self.f.clone(), self.big_f.clone());
        Self { label: format!("{k}·{}", self.label), f: Arc::new(move |s| k * f(s)), big_f: Arc::new(move |s| k * big_f(s)) }
    }

    pub fn f(&self, s: f64) -> f64 {
        (self.f)(s)
    }

    pub fn big_f(&self, s: f64) -> f64 {
        (self.big_f)(s)
    }
}
