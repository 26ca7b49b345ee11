//! Resonant quartets `Ȧ_i = c_i Π_{j≠i} A_j`.

use serde::{Deserialize, Serialize};

use crate::error::{config, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuartetSystem {
    pub c: [f64; 4],
}

impl QuartetSystem {
    pub fn new(c: [f64; 4]) -> Result<Self> {
        if c.iter().any(|&v| v == 0.0 || !v.is_finite()) {
            return Err(config("resonance::quartet", format!("couplings must be nonzero, got {c:?}")));
        }
        Ok(Self { c })
    }
}

pub fn quartet_rhs(sys: &QuartetSystem, a: &[f64; 4]) -> [f64; 4] {
    let c = sys.c;
    [c[0] * a[1] * a[2] * a[3], c[1] * a[0] * a[2] * a[3], c[2] * a[0] * a[1] * a[3], c[3] * a[0] * a[1] * a[2]]
}

/// `A_1²/c_1 − A_2²/c_2`, `A_2²/c_2 − A_3²/c_3`, `A_3²/c_3 − A_4²/c_4`.
pub fn quartet_invariants(sys: &QuartetSystem, a: &[f64; 4]) -> [f64; 3] {
    let q = |i: usize| a[i] * a[i] / sys.c[i];
    [q(0) - q(1), q(1) - q(2), q(2) - q(3)]
}
