//! Dispersion relations of constant-coefficient linear PDEs: substituting
//! `u = exp(i(k·x − ωt))` turns `P(∂_t, ∂_x) u = 0` into `P(−iω, ik) = 0`.

use nalgebra::DMatrix;
use num::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{config, Error, Result};
use crate::numerics::Stencil;

type C = Complex<f64>;

/// `coeff · ∂_t^t_order ∂_x^x_orders[0] ∂_y^x_orders[1] …`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DispersionTerm {
    pub coeff: f64,
    pub t_order: u32,
    pub x_orders: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DispersionSpec {
    /// number of space variables
    pub dim: usize,
    pub terms: Vec<DispersionTerm>,
}

const OP: &str = "spectral::dispersion_relation";
const SPACE: [char; 3] = ['x', 'y', 'z'];

impl DispersionSpec {
    pub fn new(dim: usize, terms: Vec<DispersionTerm>) -> Result<Self> {
        if dim == 0 || terms.iter().any(|t| t.x_orders.len() != dim) {
            return Err(config(OP, "every term needs one exponent per space variable"));
        }
        let s = Self { dim, terms };
        if s.omega_degree() == 0 {
            return Err(config(OP, "no term involves ∂_t"));
        }
        Ok(s)
    }

    /// Parses sums like `ut - uxxx`, `utt - uxx - uyy + 2*u`.
    pub fn parse(src: &str) -> Result<Self> {
        let bad = |msg: String| config("spectral::dispersion_parse", msg);
        let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(bad("empty polynomial".into()));
        }
        let mut pieces = Vec::new();
        let mut start = 0;
        for (i, c) in s.char_indices() {
            if (c == '+' || c == '-') && i > 0 && !s[..i].ends_with(['e', 'E']) {
                pieces.push(&s[start..i]);
                start = i;
            }
        }
        pieces.push(&s[start..]);
        let mut raw = Vec::new();
        let mut dim = 1;
        for p in pieces {
            let (sign, body) = match p.strip_prefix('-') {
                Some(b) => (-1.0, b),
                None => (1.0, p.strip_prefix('+').unwrap_or(p)),
            };
            let upos = body.rfind('u').ok_or_else(|| bad(format!("term `{p}` has no `u`")))?;
            let (num, derivs) = body.split_at(upos);
            let num = num.strip_suffix('*').unwrap_or(num);
            let coeff = if num.is_empty() {
                1.0
            } else {
                num.parse::<f64>().map_err(|_| bad(format!("bad coefficient `{num}` in `{p}`")))?
            };
            let mut t_order = 0;
            let mut xs = [0u32; 3];
            for c in derivs[1..].chars() {
                match c {
                    't' => t_order += 1,
                    c => {
                        let d = SPACE.iter().position(|&v| v == c).ok_or_else(|| bad(format!("unknown variable `{c}` in `{p}`")))?;
                        xs[d] += 1;
                        dim = dim.max(d + 1);
                    }
                }
            }
            raw.push((sign * coeff, t_order, xs));
        }
        let terms = raw
            .into_iter()
            .map(|(coeff, t_order, xs)| DispersionTerm { coeff, t_order, x_orders: xs[..dim].to_vec() })
            .collect();
        Self::new(dim, terms)
    }

    pub fn omega_degree(&self) -> usize {
        self.terms.iter().filter(|t| t.coeff != 0.0).map(|t| t.t_order as usize).max().unwrap_or(0)
    }

    /// Coefficients of `P(−iω, ik)` in ω, lowest degree first.
    pub fn omega_polynomial(&self, k: &[f64]) -> Vec<C> {
        let i = C::new(0.0, 1.0);
        let mut c = vec![C::new(0.0, 0.0); self.omega_degree() + 1];
        for t in &self.terms {
            let mut v = C::new(t.coeff, 0.0) * (-i).powu(t.t_order);
            for (kd, &b) in k.iter().zip(&t.x_orders) {
                v *= (i * kd).powu(b);
            }
            c[t.t_order as usize] += v;
        }
        c
    }

    /// All roots ω of `P(−iω, ik)` at the wave vector `k`.
    pub fn roots_at(&self, k: &[f64]) -> Result<Vec<C>> {
        if k.len() != self.dim {
            return Err(config(OP, format!("wave vector has {} components, expected {}", k.len(), self.dim)));
        }
        let p = self.omega_polynomial(k);
        let scale = p.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let lead = *p.last().unwrap();
        if lead.norm() <= 1e-14 * scale {
            return Err(Error::Degenerate { op: OP, msg: format!("leading ω coefficient vanishes at k = {k:?}") });
        }
        poly_roots(&p)
    }
}

fn horner(p: &[C], z: C) -> (C, C) {
    let mut v = C::new(0.0, 0.0);
    let mut d = C::new(0.0, 0.0);
    for c in p.iter().rev() {
        d = d * z + v;
        v = v * z + c;
    }
    (v, d)
}

/// Eigenvalues of the companion matrix, polished by Newton on `p`.
pub fn poly_roots(p: &[C]) -> Result<Vec<C>> {
    let n = p.len() - 1;
    let lead = p[n];
    if n == 1 {
        return Ok(vec![-p[0] / lead]);
    }
    let mut m = DMatrix::<C>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = C::new(1.0, 0.0);
    }
    for i in 0..n {
        m[(i, n - 1)] = -p[i] / lead;
    }
    let eig = m
        .schur()
        .eigenvalues()
        .ok_or_else(|| Error::Accuracy { op: OP, msg: "companion eigenvalues did not converge".into() })?;
    let mut roots: Vec<C> = eig.iter().copied().collect();
    for r in &mut roots {
        for _ in 0..3 {
            let (v, d) = horner(p, *r);
            if d.norm() == 0.0 {
                break;
            }
            let step = v / d;
            if !step.re.is_finite() || !step.im.is_finite() || step.norm() > 1e-6 * (1.0 + r.norm()) {
                break;
            }
            *r -= step;
        }
    }
    Ok(roots)
}

#[derive(Debug, Clone, Serialize)]
pub struct DispersionBranch {
    pub omega: Vec<C>,
    /// `ω''(k)` at samples where the stencil fits
    pub omega_pp: Vec<Option<C>>,
    pub max_abs_re_omega_pp: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DispersionReport {
    pub ks: Vec<f64>,
    pub branches: Vec<DispersionBranch>,
    /// some branch has `|Re ω''| > tol`
    pub dispersive: bool,
    /// some branch has a nonzero imaginary part
    pub dissipative: bool,
    pub tol: f64,
    pub warnings: Vec<String>,
}

/// Branches `ω_j(k)` on uniformly spaced `ks` with `ω''` by central
/// differences (accuracy 4). Branches are continued by linear extrapolation
/// and nearest-root matching.
pub fn dispersion_relation(spec: &DispersionSpec, ks: &[f64], tol: f64) -> Result<DispersionReport> {
    if spec.dim != 1 {
        return Err(config(OP, "several space variables: use dispersion_hessian"));
    }
    if ks.len() < 2 {
        return Err(config(OP, "need at least two k samples"));
    }
    let h = ks[1] - ks[0];
    if !(h > 0.0) || ks.windows(2).any(|w| ((w[1] - w[0]) - h).abs() > 1e-9 * h) {
        return Err(config(OP, "k samples must be increasing and uniformly spaced"));
    }
    let deg = spec.omega_degree();
    let mut warnings = Vec::new();
    let mut tracks: Vec<Vec<C>> = vec![Vec::with_capacity(ks.len()); deg];
    for (s, &k) in ks.iter().enumerate() {
        let mut roots = spec.roots_at(&[k])?;
        if roots.len() != deg {
            return Err(Error::Accuracy { op: OP, msg: format!("{} roots for degree {deg} at k = {k}", roots.len()) });
        }
        let scale = 1.0 + roots.iter().map(|r| r.norm()).fold(0.0, f64::max);
        for a in 0..deg {
            for b in a + 1..deg {
                if (roots[a] - roots[b]).norm() < 1e-8 * scale {
                    warnings.push(format!("branches cross near k = {k}; tracking may swap them"));
                }
            }
        }
        if s == 0 {
            roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
            for (tr, r) in tracks.iter_mut().zip(roots) {
                tr.push(r);
            }
            continue;
        }
        for tr in tracks.iter_mut() {
            let guess = if s >= 2 { tr[s - 1] * 2.0 - tr[s - 2] } else { tr[s - 1] };
            let (best, _) = roots
                .iter()
                .enumerate()
                .map(|(i, r)| (i, (r - guess).norm()))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .expect("root list is non-empty");
            tr.push(roots.swap_remove(best));
        }
    }
    let st = Stencil::central(2, 4)?;
    let r = st.half_width;
    let mut dispersive = false;
    let mut dissipative = false;
    let branches = tracks
        .into_iter()
        .map(|omega| {
            let scale = 1.0 + omega.iter().map(|w| w.norm()).fold(0.0, f64::max);
            dissipative |= omega.iter().any(|w| w.im.abs() > 1e-10 * scale);
            let omega_pp: Vec<Option<C>> = (0..omega.len())
                .map(|s| {
                    (s >= r && s + r < omega.len()).then(|| {
                        st.weights.iter().enumerate().map(|(j, w)| omega[s + j - r] * *w).sum::<C>() / (h * h)
                    })
                })
                .collect();
            let max_abs_re_omega_pp = omega_pp.iter().flatten().map(|w| w.re.abs()).fold(0.0, f64::max);
            dispersive |= max_abs_re_omega_pp > tol;
            DispersionBranch { omega, omega_pp, max_abs_re_omega_pp }
        })
        .collect();
    warnings.dedup();
    Ok(DispersionReport { ks: ks.to_vec(), branches, dispersive, dissipative, tol, warnings })
}

/// Per branch at `k`: `ω` and the determinant of the Hessian `∂²ω/∂k_a∂k_b`
/// by central differences with step `h`. Branches at shifted points are
/// matched to the nearest root at `k`.
pub fn dispersion_hessian(spec: &DispersionSpec, k: &[f64], h: f64) -> Result<Vec<(C, C)>> {
    let d = spec.dim;
    let base = spec.roots_at(k)?;
    let shifted = |delta: &[(usize, f64)]| -> Result<Vec<C>> {
        let mut kk = k.to_vec();
        for &(a, s) in delta {
            kk[a] += s;
        }
        let roots = spec.roots_at(&kk)?;
        Ok(base
            .iter()
            .map(|b| *roots.iter().min_by(|x, y| (*x - b).norm().total_cmp(&(*y - b).norm())).expect("non-empty"))
            .collect())
    };
    let mut hess = vec![vec![C::new(0.0, 0.0); d * d]; base.len()];
    for a in 0..d {
        let p = shifted(&[(a, h)])?;
        let m = shifted(&[(a, -h)])?;
        for (j, hm) in hess.iter_mut().enumerate() {
            hm[a * d + a] = (p[j] - base[j] * 2.0 + m[j]) / (h * h);
        }
        for b in a + 1..d {
            let pp = shifted(&[(a, h), (b, h)])?;
            let pm = shifted(&[(a, h), (b, -h)])?;
            let mp = shifted(&[(a, -h), (b, h)])?;
            let mm = shifted(&[(a, -h), (b, -h)])?;
            for (j, hm) in hess.iter_mut().enumerate() {
                let v = (pp[j] - pm[j] - mp[j] + mm[j]) / (4.0 * h * h);
                hm[a * d + b] = v;
                hm[b * d + a] = v;
            }
        }
    }
    Ok(base
        .into_iter()
        .zip(hess)
        .map(|(w, hm)| (w, DMatrix::from_row_slice(d, d, &hm).determinant()))
        .collect())
}
