//! Resonant triads `Ȧ_i = c_i A_j A_k` and their Jacobi elliptic solutions.

use serde::{Deserialize, Serialize};

use super::elliptic::{ellip_f, ellip_k, jacobi};
use crate::diffop::UPoly;
use crate::error::{config, Error, Result};
use crate::exprjet::Rat;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "mode")]
pub enum TriadMode {
    /// `n_1 ȧ_1 = (n_2 − n_3) a_2 a_3` and cyclic
    Planetary { n: [f64; 3] },
    /// `Ȧ_1 = c_1 A_2 A_3` and cyclic
    Generic { c: [f64; 3] },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriadSystem {
    pub mode: TriadMode,
}

const OP: &str = "resonance::triad";

impl TriadSystem {
    pub fn planetary(n: [f64; 3]) -> Result<Self> {
        if n.iter().any(|&v| !(v > 0.0) || !v.is_finite()) {
            return Err(config(OP, format!("wavenumbers must be positive, got {n:?}")));
        }
        Ok(Self { mode: TriadMode::Planetary { n } })
    }

    pub fn generic(c: [f64; 3]) -> Result<Self> {
        if c.iter().any(|&v| v == 0.0 || !v.is_finite()) {
            return Err(config(OP, format!("couplings must be nonzero, got {c:?}")));
        }
        Ok(Self { mode: TriadMode::Generic { c } })
    }

    pub fn couplings(&self) -> [f64; 3] {
        match self.mode {
            TriadMode::Planetary { n } => [(n[1] - n[2]) / n[0], (n[2] - n[0]) / n[1], (n[0] - n[1]) / n[2]],
            TriadMode::Generic { c } => c,
        }
    }
}

pub fn triad_rhs(sys: &TriadSystem, a: &[f64; 3]) -> [f64; 3] {
    let c = sys.couplings();
    [c[0] * a[1] * a[2], c[1] * a[0] * a[2], c[2] * a[0] * a[1]]
}

/// Planetary: energy `Σ n_i a_i²` and enstrophy `Σ n_i² a_i²`.
/// Generic: `A_1²/c_1 − A_3²/c_3` and `A_2²/c_2 − A_3²/c_3`.
pub fn invariants(sys: &TriadSystem, a: &[f64; 3]) -> (f64, f64) {
    match sys.mode {
        TriadMode::Planetary { n } => (
            (0..3).map(|i| n[i] * a[i] * a[i]).sum(),
            (0..3).map(|i| n[i] * n[i] * a[i] * a[i]).sum(),
        ),
        TriadMode::Generic { c } => {
            let q = |i: usize| a[i] * a[i] / c[i];
            (q(0) - q(2), q(1) - q(2))
        }
    }
}

/// `A_cn = b_cn cn(τ)`, `A_dn = b_dn dn(τ)`, `A_sn = b_sn sn(τ)` with
/// `τ = t/t0 − λ`; `roles` holds the component index of cn, dn and sn.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EllipticParams {
    pub roles: [usize; 3],
    /// amplitudes in role order (cn, dn, sn)
    pub b: [f64; 3],
    pub t0: f64,
    pub lambda: f64,
    pub m: f64,
    /// `K(m)`
    pub k: f64,
    /// `4K|t0|`
    pub period: f64,
}

impl EllipticParams {
    pub fn eval(&self, t: f64) -> [f64; 3] {
        let (sn, cn, dn) = jacobi(t / self.t0 - self.lambda, self.m).expect("m checked at construction");
        let mut a = [0.0; 3];
        a[self.roles[0]] = self.b[0] * cn;
        a[self.roles[1]] = self.b[1] * dn;
        a[self.roles[2]] = self.b[2] * sn;
        a
    }
}

/// Separatrix guard on `m`.
pub const SEPARATRIX_TOL: f64 = 1e-10;

/// Closed-form solution through `a0` (time variable `T = t`).
///
/// The component whose coupling has the minority sign takes `sn`; of the
/// other two the one with the larger invariant level `A_i²/c_i − A_s²/c_s`
/// takes `dn`, so that `m = I_cn / I_dn < 1`.
pub fn closed_form(sys: &TriadSystem, a0: &[f64; 3]) -> Result<EllipticParams> {
    const OP: &str = "resonance::closed_form";
    let c = sys.couplings();
    let degen = |msg: String| Error::Degenerate { op: OP, msg };
    if c.iter().any(|&v| v == 0.0) {
        return Err(degen(format!("a coupling vanishes ({c:?}); the flow is linear in time, not elliptic")));
    }
    let pos: Vec<usize> = (0..3).filter(|&i| c[i] > 0.0).collect();
    let s = match pos.len() {
        1 => pos[0],
        2 => (0..3).find(|i| !pos.contains(i)).unwrap(),
        _ => return Err(degen(format!("all couplings share a sign ({c:?}); no bounded elliptic solution"))),
    };
    let (p, q) = match s {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let level = |i: usize| a0[i] * a0[i] / c[i] - a0[s] * a0[s] / c[s];
    let (ip, iq) = (level(p), level(q));
    let (icn, idn, cn_i, dn_i) = if ip.abs() <= iq.abs() { (ip, iq, p, q) } else { (iq, ip, q, p) };
    let scale = a0.iter().map(|v| v * v).sum::<f64>().max(f64::MIN_POSITIVE);
    if (c[cn_i] * icn).abs() <= 1e-12 * scale {
        return Err(degen(format!("equilibrium: A_{}²/c − A_{}²/c vanishes, the orbit is a fixed point", cn_i + 1, s + 1)));
    }
    let m = icn / idn;
    if !(m < 1.0 - SEPARATRIX_TOL) {
        return Err(degen(format!("separatrix: m = {m} is within {SEPARATRIX_TOL:e} of 1 (equal invariant levels)")));
    }
    let b_cn = (c[cn_i] * icn).sqrt();
    let b_dn = (c[dn_i] * idn).sqrt().copysign(a0[dn_i]);
    let b_sn = (-c[s] / c[cn_i]).sqrt() * b_cn;
    let t0 = b_sn / (c[s] * b_cn * b_dn);
    let phi = (a0[s] / b_sn).atan2(a0[cn_i] / b_cn);
    let lambda = -ellip_f(phi, m)?;
    let k = ellip_k(m)?;
    Ok(EllipticParams {
        roles: [cn_i, dn_i, s],
        b: [b_cn, b_dn, b_sn],
        t0,
        lambda,
        m,
        k,
        period: 4.0 * k * t0.abs(),
    })
}

/// `f` with `(Ȧ_1)² = f(A_1)` on the level set through `a0`:
/// `c_1² · c_2(y²/c_1 − I_13 + I_23) · c_3(y²/c_1 − I_13)`.
pub fn reduced_polynomial(c: &[Rat; 3], a0: &[Rat; 3]) -> Result<UPoly> {
    if c.iter().any(|v| *v == Rat::from_integer(0.into())) {
        return Err(config("resonance::reduced_polynomial", "couplings must be nonzero"));
    }
    let q = |i: usize| &a0[i] * &a0[i] / &c[i];
    let i13 = q(0) - q(2);
    let i23 = q(1) - q(2);
    let y2 = UPoly::monomial(Rat::from_integer(1.into()) / &c[0], 2);
    let f2 = &y2 + &UPoly::constant(&i23 - &i13);
    let f3 = &y2 - &UPoly::constant(i13);
    Ok((&f2 * &f3).scale(&(&c[0] * &c[0] * &c[1] * &c[2])))
}
