//! Jacobi elliptic functions by descending Landen (AGM) transformations,
//! complete integrals and Carlson's symmetric `R_F`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const OP: &str = "resonance::jacobi";

fn check_m(m: f64) -> Result<()> {
    if !(0.0..1.0).contains(&m) {
        return Err(Error::Domain { op: OP, msg: format!("parameter m = {m} outside [0, 1)") });
    }
    Ok(())
}

fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..64 {
        if (a - b).abs() <= 1e-16 * a {
            break;
        }
        (a, b) = (0.5 * (a + b), (a * b).sqrt());
    }
    0.5 * (a + b)
}

/// Complete elliptic integral of the first kind `K(m) = π / (2 AGM(1, √(1−m)))`.
pub fn ellip_k(m: f64) -> Result<f64> {
    check_m(m)?;
    Ok(PI / (2.0 * agm(1.0, (1.0 - m).sqrt())))
}

/// `(sn, cn, dn)(u | m)`. The argument is first reduced modulo `4K`.
pub fn jacobi(u: f64, m: f64) -> Result<(f64, f64, f64)> {
    check_m(m)?;
    if !u.is_finite() {
        return Err(Error::Domain { op: OP, msg: format!("argument u = {u} is not finite") });
    }
    if m == 0.0 {
        return Ok((u.sin(), u.cos(), 1.0));
    }
    let k = ellip_k(m)?;
    let u = u - 4.0 * k * (u / (4.0 * k)).round();
    // a_n, c_n of the AGM sequence starting at (1, √(1−m))
    let (mut a, mut b) = (1.0f64, (1.0 - m).sqrt());
    let mut ratios = Vec::new();
    while ratios.len() < 64 {
        let c = 0.5 * (a - b);
        (a, b) = (0.5 * (a + b), (a * b).sqrt());
        ratios.push(c / a);
        if c.abs() <= 1e-17 {
            break;
        }
    }
    let mut phi = 2f64.powi(ratios.len() as i32) * a * u;
    for r in ratios.iter().rev() {
        phi = 0.5 * (phi + (r * phi.sin()).asin());
    }
    let (sn, cn) = phi.sin_cos();
    Ok((sn, cn, (1.0 - m * sn * sn).sqrt()))
}

/// Carlson's `R_F(x, y, z)` by duplication; arguments nonnegative, at most
/// one zero.
pub fn carlson_rf(x: f64, y: f64, z: f64) -> Result<f64> {
    if x < 0.0 || y < 0.0 || z < 0.0 || [x + y, y + z, x + z].iter().any(|&s| s == 0.0) {
        return Err(Error::Domain {
            op: "resonance::carlson_rf",
            msg: format!("R_F({x}, {y}, {z}) undefined"),
        });
    }
    let (mut x, mut y, mut z) = (x, y, z);
    for _ in 0..100 {
        let mu = (x + y + z) / 3.0;
        let (dx, dy, dz) = (1.0 - x / mu, 1.0 - y / mu, 1.0 - z / mu);
        if dx.abs().max(dy.abs()).max(dz.abs()) < 1e-4 {
            let e2 = dx * dy + dy * dz + dz * dx;
            let e3 = dx * dy * dz;
            // fifth-order series, truncation ~ δ⁶
            return Ok((1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) / mu.sqrt());
        }
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lam = sx * sy + sy * sz + sz * sx;
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
    }
    Err(Error::Accuracy { op: "resonance::carlson_rf", msg: "duplication did not converge".into() })
}

/// Incomplete integral `F(φ | m)` for any real amplitude `φ`, so that
/// `sn(F(φ|m)) = sin φ` and `cn(F(φ|m)) = cos φ`.
pub fn ellip_f(phi: f64, m: f64) -> Result<f64> {
    check_m(m)?;
    let j = (phi / PI).round();
    let r = phi - j * PI;
    let (s, c) = r.sin_cos();
    let base = s * carlson_rf(c * c, 1.0 - m * s * s, 1.0)?;
    Ok(2.0 * j * ellip_k(m)? + base)
}
