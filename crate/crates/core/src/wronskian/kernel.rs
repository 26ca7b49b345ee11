use super::basis::BasisFunction;
use crate::diffop::{LinearDiffOp, RationalFn, UPoly};
use crate::error::{config, domain, Error, Result};
use crate::io::CsvTable;
use crate::numerics::linalg::Lu;

pub const MAX_ORDER: usize = 6;
pub const MIN_SAMPLES: usize = 16;
/// Relative Wronskian threshold, measured against the Hadamard bound.
pub const DEGENERACY_TOL: f64 = 1e-12;
/// Relative residual allowed for basis members after construction.
pub const RESIDUAL_TOL: f64 = 1e-8;

/// Prescribed kernel: `m` basis functions sampled on a closed window.
#[derive(Debug, Clone)]
pub struct KernelSpec {
    basis: Vec<BasisFunction>,
    window: (f64, f64),
    samples: usize,
}

impl KernelSpec {
    /// Checks shape only; the Wronskian is checked pointwise by
    /// [`KernelSpec::validate`] and again during construction.
    pub fn new(basis: Vec<BasisFunction>, window: (f64, f64), samples: usize) -> Result<Self> {
        const OP: &str = "wronskian::kernel_spec";
        if basis.is_empty() || basis.len() > MAX_ORDER {
            return Err(config(OP, format!("kernel size must be 1..={MAX_ORDER}, got {}", basis.len())));
        }
        if samples < MIN_SAMPLES {
            return Err(config(OP, format!("need at least {MIN_SAMPLES} samples, got {samples}")));
        }
        let (lo, hi) = window;
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(config(OP, format!("window [{lo}, {hi}] is not a finite interval")));
        }
        Ok(Self { basis, window, samples })
    }

    pub fn basis(&self) -> &[BasisFunction] {
        &self.basis
    }

    pub fn order(&self) -> usize {
        self.basis.len()
    }

    pub fn window(&self) -> (f64, f64) {
        self.window
    }

    pub fn sample_points(&self) -> Vec<f64> {
        let (lo, hi) = self.window;
        let n = self.samples - 1;
        (0..=n).map(|i| lo + (hi - lo) * i as f64 / n as f64).collect()
    }

    /// Fails with a degenerate-kernel error at the first sample where the
    /// Wronskian is negligible relative to its Hadamard bound.
    pub fn validate(&self) -> Result<()> {
        for x in self.sample_points() {
            check_wronskian(&self.basis, x, "wronskian::kernel_spec")?;
        }
        Ok(())
    }
}

/// Row-major matrix `M[k][j] = φ_j^(k)(x)` for `k < rows`.
fn derivative_matrix(basis: &[BasisFunction], x: f64, rows: usize, op: &'static str) -> Result<Vec<f64>> {
    let m = basis.len();
    let mut a = Vec::with_capacity(rows * m);
    for k in 0..rows {
        for b in basis {
            let v = b.eval(x, k);
            if !v.is_finite() {
                return Err(Error::Evaluation {
                    op,
                    msg: format!("derivative {k} of `{}` is {v} at x = {x}", b.label()),
                });
            }
            a.push(v);
        }
    }
    Ok(a)
}

/// Determinant of the `m × m` matrix of derivatives `0..m` at `x`.
pub fn wronskian_det(basis: &[BasisFunction], x: f64) -> Result<f64> {
    let m = basis.len();
    let a = derivative_matrix(basis, x, m, "wronskian::wronskian_det")?;
    Ok(Lu::new(m, a).det())
}

/// Returns `(W, Hadamard bound)` or a degenerate-kernel error.
fn check_wronskian(basis: &[BasisFunction], x: f64, op: &'static str) -> Result<(f64, f64)> {
    let m = basis.len();
    let a = derivative_matrix(basis, x, m, op)?;
    let bound: f64 = (0..m)
        .map(|j| (0..m).map(|k| a[k * m + j].powi(2)).sum::<f64>().sqrt())
        .product();
    let w = Lu::new(m, a).det();
    if !(w.abs() > DEGENERACY_TOL * bound) {
        return Err(Error::Degenerate {
            op,
            msg: format!("Wronskian {w:e} is negligible (bound {bound:e}) at x = {x}"),
        });
    }
    Ok((w, bound))
}

/// Zeros of the Wronskian strictly between samples, located by sign changes
/// on a grid four times finer than the sample grid and refined by bisection.
/// Each is a singular point of the monic operator.
pub fn wronskian_zeros(spec: &KernelSpec) -> Result<Vec<f64>> {
    const OP: &str = "wronskian::wronskian_zeros";
    let w = |x: f64| wronskian_det(&spec.basis, x);
    let (lo, hi) = spec.window;
    let n = 4 * (spec.samples - 1);
    let mut zeros = Vec::new();
    let mut a = lo;
    let mut fa = w(a)?;
    for i in 1..=n {
        let b = lo + (hi - lo) * i as f64 / n as f64;
        let fb = w(b)?;
        if fa * fb < 0.0 {
            let (mut l, mut r, mut fl) = (a, b, fa);
            for _ in 0..200 {
                let mid = 0.5 * (l + r);
                if mid <= l || mid >= r {
                    break;
                }
                let fm = w(mid)?;
                if fm == 0.0 {
                    (l, r) = (mid, mid);
                    break;
                }
                if (fm < 0.0) == (fl < 0.0) {
                    (l, fl) = (mid, fm);
                } else {
                    r = mid;
                }
            }
            zeros.push(0.5 * (l + r));
        } else if fb == 0.0 && i < n {
            zeros.push(b);
        }
        if !fb.is_finite() {
            return Err(Error::Evaluation { op: OP, msg: format!("Wronskian is {fb} at x = {b}") });
        }
        (a, fa) = (b, fb);
    }
    Ok(zeros)
}

/// Monic operator sampled pointwise: `coeffs[i] = (c_0, …, c_{m−1}, 1)` at `xs[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledOperator {
    pub xs: Vec<f64>,
    pub coeffs: Vec<Vec<f64>>,
    pub window: (f64, f64),
}

impl SampledOperator {
    pub fn order(&self) -> usize {
        self.coeffs.first().map_or(0, |c| c.len() - 1)
    }

    /// `Σ c_k ψ^(k)` at sample `i`.
    pub fn apply_at(&self, i: usize, psi: &BasisFunction) -> f64 {
        let x = self.xs[i];
        self.coeffs[i].iter().enumerate().map(|(k, c)| c * psi.eval(x, k)).sum()
    }

    /// `Σ|c_k| · max_k |ψ^(k)|` at sample `i`, the size a residual is measured against.
    pub fn scale_at(&self, i: usize, psi: &BasisFunction) -> f64 {
        let x = self.xs[i];
        let c: f64 = self.coeffs[i].iter().map(|c| c.abs()).sum();
        let d = (0..self.coeffs[i].len()).map(|k| psi.eval(x, k).abs()).fold(0.0, f64::max);
        c * d
    }

    pub fn to_csv(&self) -> CsvTable {
        let m = self.order();
        let mut t = CsvTable::new(std::iter::once("x".to_string()).chain((0..=m).map(|k| format!("c{k}"))));
        for (x, c) in self.xs.iter().zip(&self.coeffs) {
            t.push(std::iter::once(*x).chain(c.iter().copied()).collect());
        }
        t
    }
}

/// Monic operator whose kernel is spanned by `spec.basis`: at every sample the
/// lower coefficients solve `Σ_k c_k φ_j^(k) = −φ_j^(m)`, which is the
/// cofactor expansion of the bordered Wronskian divided by the Wronskian.
pub fn operator_from_kernel(spec: &KernelSpec) -> Result<SampledOperator> {
    const OP: &str = "wronskian::operator_from_kernel";
    let m = spec.order();
    let xs = spec.sample_points();
    let mut coeffs = Vec::with_capacity(xs.len());
    for &x in &xs {
        check_wronskian(&spec.basis, x, OP)?;
        let a = derivative_matrix(&spec.basis, x, m + 1, OP)?;
        // transpose the top m rows: unknowns are indexed by derivative order
        let mut t = vec![0.0; m * m];
        for k in 0..m {
            for j in 0..m {
                t[j * m + k] = a[k * m + j];
            }
        }
        let rhs: Vec<f64> = (0..m).map(|j| -a[m * m + j]).collect();
        let mut c = Lu::new(m, t).solve(&rhs).ok_or_else(|| Error::Degenerate {
            op: OP,
            msg: format!("singular derivative matrix at x = {x}"),
        })?;
        c.push(1.0);
        coeffs.push(c);
    }
    let op = SampledOperator { xs, coeffs, window: spec.window };
    for b in &spec.basis {
        for i in 0..op.xs.len() {
            let (r, s) = (op.apply_at(i, b), op.scale_at(i, b));
            if !(r.abs() <= RESIDUAL_TOL * s.max(f64::MIN_POSITIVE)) {
                return Err(Error::Accuracy {
                    op: OP,
                    msg: format!("residual {r:e} of `{}` at x = {} exceeds tolerance (scale {s:e})", b.label(), op.xs[i]),
                });
            }
        }
    }
    Ok(op)
}

/// Largest `|Σ c_k ψ^(k)|` over the operator's samples inside `window`.
pub fn membership_test(op: &SampledOperator, psi: &BasisFunction, window: (f64, f64)) -> Result<f64> {
    const OP: &str = "wronskian::membership_test";
    let (lo, hi) = window;
    let (a, b) = op.window;
    let slack = 1e-12 * (b - a);
    if !(lo <= hi && lo >= a - slack && hi <= b + slack) {
        return Err(domain(OP, format!("window [{lo}, {hi}] is not inside the construction window [{a}, {b}]")));
    }
    let mut worst: Option<f64> = None;
    for (i, &x) in op.xs.iter().enumerate() {
        if x < lo || x > hi {
            continue;
        }
        let r = op.apply_at(i, psi).abs();
        if !r.is_finite() {
            return Err(Error::Evaluation { op: OP, msg: format!("`{}` is not finite at x = {x}", psi.label()) });
        }
        worst = Some(worst.map_or(r, |w: f64| w.max(r)));
    }
    worst.ok_or_else(|| domain(OP, format!("no samples inside [{lo}, {hi}]")))
}

/// Exact monic operator for a polynomial kernel, by Gaussian elimination
/// over rational functions.
pub fn exact_operator_from_polynomials(basis: &[UPoly]) -> Result<LinearDiffOp> {
    const OP: &str = "wronskian::exact_operator";
    let m = basis.len();
    if m == 0 || m > MAX_ORDER {
        return Err(config(OP, format!("kernel size must be 1..={MAX_ORDER}, got {m}")));
    }
    let derivs: Vec<Vec<RationalFn>> = basis
        .iter()
        .map(|p| {
            let mut v = vec![RationalFn::from(p.clone())];
            for _ in 0..m {
                let d = v.last().expect("non-empty").derivative();
                v.push(d);
            }
            v
        })
        .collect();
    // row j: Σ_k c_k φ_j^(k) = −φ_j^(m)
    let mut rows: Vec<Vec<RationalFn>> = derivs
        .iter()
        .map(|d| {
            let mut r = d[..m].to_vec();
            r.push(-&d[m]);
            r
        })
        .collect();
    for col in 0..m {
        let piv = (col..m).find(|&r| !rows[r][col].is_zero()).ok_or_else(|| Error::Degenerate {
            op: OP,
            msg: "polynomial kernel is linearly dependent".into(),
        })?;
        rows.swap(col, piv);
        let inv = rows[col][col].recip().expect("nonzero pivot");
        rows[col] = rows[col].iter().map(|v| v * &inv).collect();
        for r in 0..m {
            if r != col && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                let pivot_row = rows[col].clone();
                for (v, p) in rows[r].iter_mut().zip(&pivot_row) {
                    *v = &*v - &(&f * p);
                }
            }
        }
    }
    let mut c: Vec<RationalFn> = rows.into_iter().map(|r| r[m].clone()).collect();
    c.push(RationalFn::one());
    Ok(LinearDiffOp::new(c))
}

/// Comparison between the construction for the kernel `{sin x, √x}` and the
/// hand-written form `ψ''(1 − ½tan x) + tan x ψ' − ψ/(2x) − 3ψ/(4x²) = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceFormReport {
    /// max |c₁ − tan/(1 − ½tan)| over the samples
    pub first_coeff_gap: f64,
    /// max |c₀ − (−1/(2x) − 3/(4x²))/(1 − ½tan)| over the samples
    pub zeroth_coeff_gap: f64,
    /// max residual of the reference form on sin and on √x
    pub reference_residual_sin: f64,
    pub reference_residual_sqrt: f64,
    /// max residual of the constructed operator on both kernel members
    pub constructed_residual: f64,
    /// zeros of the Wronskian inside the window (singular points)
    pub wronskian_zeros: Vec<f64>,
}

impl ReferenceFormReport {
    pub fn agrees(&self, tol: f64) -> bool {
        self.first_coeff_gap < tol && self.zeroth_coeff_gap < tol
    }
}

pub fn sin_sqrt_reference_comparison(samples: usize) -> Result<ReferenceFormReport> {
    let (sin, sqrt) = (BasisFunction::sin(), BasisFunction::sqrt());
    let spec = KernelSpec::new(vec![sin.clone(), sqrt.clone()], (0.5, 1.4), samples)?;
    let op = operator_from_kernel(&spec)?;
    let mut rep = ReferenceFormReport {
        first_coeff_gap: 0.0,
        zeroth_coeff_gap: 0.0,
        reference_residual_sin: 0.0,
        reference_residual_sqrt: 0.0,
        constructed_residual: 0.0,
        wronskian_zeros: wronskian_zeros(&spec)?,
    };
    let reference = |x: f64, psi: &BasisFunction| {
        let t = x.tan();
        psi.eval(x, 2) * (1.0 - 0.5 * t) + t * psi.eval(x, 1) - psi.eval(x, 0) / (2.0 * x) - 0.75 * psi.eval(x, 0) / (x * x)
    };
    for (i, &x) in op.xs.iter().enumerate() {
        let t = x.tan();
        let lead = 1.0 - 0.5 * t;
        let c = &op.coeffs[i];
        rep.first_coeff_gap = rep.first_coeff_gap.max((c[1] - t / lead).abs());
        rep.zeroth_coeff_gap = rep.zeroth_coeff_gap.max((c[0] - (-0.5 / x - 0.75 / (x * x)) / lead).abs());
        rep.reference_residual_sin = rep.reference_residual_sin.max(reference(x, &sin).abs());
        rep.reference_residual_sqrt = rep.reference_residual_sqrt.max(reference(x, &sqrt).abs());
        rep.constructed_residual = rep
            .constructed_residual
            .max(op.apply_at(i, &sin).abs())
            .max(op.apply_at(i, &sqrt).abs());
    }
    Ok(rep)
}
