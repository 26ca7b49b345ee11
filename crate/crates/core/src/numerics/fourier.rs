//! Discrete Fourier transform on periodic grids.
//!
//! Coefficients follow `ŵ(k) = (1/n) Σ_j w(x_j) exp(-i k 2π (x_j - a)/L)` with
//! integer wavenumbers `k ∈ {-n/2, …, n/2 - 1}`.

use std::sync::Arc;

use num::Complex;
use rustfft::{Fft, FftPlanner};

use super::grid::{Grid1D, SampledField};
use crate::error::{config, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    grid: Grid1D,
    /// FFT ordering: index `j` holds wavenumber `j` for `j < n/2`, else `j - n`.
    coeffs: Vec<Complex<f64>>,
}

impl Spectrum {
    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn k_of_index(&self, j: usize) -> i64 {
        let n = self.coeffs.len();
        if j < n / 2 {
            j as i64
        } else {
            j as i64 - n as i64
        }
    }

    fn index_of_k(&self, k: i64) -> Option<usize> {
        let n = self.coeffs.len() as i64;
        if k < -n / 2 || k >= n / 2 {
            return None;
        }
        Some(if k >= 0 { k as usize } else { (k + n) as usize })
    }

    /// Coefficient for integer wavenumber `k`; zero outside the resolved band.
    pub fn coeff(&self, k: i64) -> Complex<f64> {
        self.index_of_k(k).map_or(Complex::new(0.0, 0.0), |j| self.coeffs[j])
    }

    /// Physical wavenumber `2πk/L` at storage index `j`.
    pub fn wavenumber(&self, j: usize) -> f64 {
        2.0 * std::f64::consts::PI * self.k_of_index(j) as f64 / self.grid.length()
    }

    pub fn is_nyquist(&self, j: usize) -> bool {
        j == self.coeffs.len() / 2
    }

    /// `(k, ŵ(k))` pairs in ascending `k`.
    pub fn iter_sorted(&self) -> impl Iterator<Item = (i64, Complex<f64>)> + '_ {
        let n = self.coeffs.len() as i64;
        (-n / 2..n / 2).map(move |k| (k, self.coeff(k)))
    }

    pub fn map_indexed(&self, f: impl Fn(usize, Complex<f64>) -> Complex<f64>) -> Self {
        Self {
            grid: self.grid,
            coeffs: self.coeffs.iter().enumerate().map(|(j, &c)| f(j, c)).collect(),
        }
    }
}

fn plan(n: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    let mut planner = FftPlanner::new();
    if inverse {
        planner.plan_fft_inverse(n)
    } else {
        planner.plan_fft_forward(n)
    }
}

fn check_even(n: usize) -> Result<()> {
    if n % 2 != 0 {
        return Err(config("numerics::dft", format!("grid size must be even, got {n}")));
    }
    Ok(())
}

pub fn dft(field: &SampledField) -> Result<Spectrum> {
    let n = field.grid().n();
    check_even(n)?;
    let mut buf = field.values().to_vec();
    plan(n, false).process(&mut buf);
    let scale = 1.0 / n as f64;
    buf.iter_mut().for_each(|c| *c *= scale);
    Ok(Spectrum {
        grid: *field.grid(),
        coeffs: buf,
    })
}

pub fn idft(spectrum: &Spectrum) -> SampledField {
    let n = spectrum.coeffs.len();
    let mut buf = spectrum.coeffs.clone();
    plan(n, true).process(&mut buf);
    SampledField::new(spectrum.grid, buf).expect("spectrum length matches its grid")
}

/// `order`-th derivative by spectral multiplication with `(i κ)^order`.
/// The Nyquist coefficient is dropped.
pub fn spectral_derivative(field: &SampledField, order: u32) -> Result<SampledField> {
    let spec = dft(field)?;
    let out = spec.map_indexed(|j, c| {
        if spec.is_nyquist(j) && order > 0 {
            return Complex::new(0.0, 0.0);
        }
        c * Complex::new(0.0, spec.wavenumber(j)).powu(order)
    });
    Ok(idft(&out))
}

/// Periodic antiderivative of a zero-mean field whose mean over the grid is
/// zero; the constant of integration is fixed so the result vanishes at the
/// first grid point.
pub fn spectral_antiderivative(field: &SampledField) -> Result<SampledField> {
    let spec = dft(field)?;
    let out = spec.map_indexed(|j, c| {
        if j == 0 || spec.is_nyquist(j) {
            Complex::new(0.0, 0.0)
        } else {
            c / Complex::new(0.0, spec.wavenumber(j))
        }
    });
    let mut v = idft(&out);
    let offset = v.values()[0];
    v.values_mut().iter_mut().for_each(|x| *x -= offset);
    Ok(v)
}

/// Direct O(n²) evaluation of the forward transform; reference for tests.
pub fn dft_naive(field: &SampledField) -> Result<Vec<(i64, Complex<f64>)>> {
    let n = field.grid().n();
    check_even(n)?;
    let g = field.grid();
    let mut out = Vec::with_capacity(n);
    for k in -(n as i64) / 2..(n as i64) / 2 {
        let mut acc = Complex::new(0.0, 0.0);
        for (j, w) in field.values().iter().enumerate() {
            let phase = -(k as f64) * 2.0 * std::f64::consts::PI * (g.x(j) - g.a()) / g.length();
            acc += w * Complex::from_polar(1.0, phase);
        }
        out.push((k, acc / n as f64));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn constant_field() {
        let g = Grid1D::periodic_2pi(16).unwrap();
        let s = dft(&SampledField::from_fn(g, |_| 1.0)).unwrap();
        assert!((s.coeff(0) - Complex::new(1.0, 0.0)).norm() < 1e-15);
        for k in 1..8 {
            assert!(s.coeff(k).norm() < 1e-15);
            assert!(s.coeff(-k).norm() < 1e-15);
        }
    }

    #[test]
    fn sine_coefficients() {
        let g = Grid1D::periodic_2pi(64).unwrap();
        let s = dft(&SampledField::from_fn(g, f64::sin)).unwrap();
        assert!((s.coeff(1) - Complex::new(0.0, -0.5)).norm() < 1e-14);
        assert!((s.coeff(-1) - Complex::new(0.0, 0.5)).norm() < 1e-14);
        for (k, c) in s.iter_sorted() {
            if k.abs() != 1 {
                assert!(c.norm() < 1e-14, "k={k}: {c}");
            }
        }
    }

    #[test]
    fn matches_naive_transform() {
        let g = Grid1D::new(24, -1.0, 2.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let v: Vec<_> = (0..24).map(|_| Complex::new(rng.gen(), rng.gen())).collect();
        let f = SampledField::new(g, v).unwrap();
        let fast = dft(&f).unwrap();
        for (k, c) in dft_naive(&f).unwrap() {
            assert!((fast.coeff(k) - c).norm() < 1e-13);
        }
    }

    #[test]
    fn round_trip_random_sizes() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [8usize, 10, 64, 100, 256, 1024] {
            let g = Grid1D::new(n, 0.0, 3.0).unwrap();
            let v: Vec<_> = (0..n).map(|_| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
            let f = SampledField::new(g, v).unwrap();
            let back = idft(&dft(&f).unwrap());
            assert!(back.max_abs_diff(&f) < 1e-12, "n={n}");
        }
    }

    #[test]
    fn odd_size_rejected() {
        let g = Grid1D::periodic_2pi(9).unwrap();
        assert!(matches!(
            dft(&SampledField::from_fn(g, f64::sin)),
            Err(crate::Error::Config { .. })
        ));
    }

    #[test]
    fn derivative_and_antiderivative() {
        let g = Grid1D::periodic_2pi(32).unwrap();
        let f = SampledField::from_fn(g, |x| (2.0 * x).sin());
        let d = spectral_derivative(&f, 1).unwrap();
        let exact = SampledField::from_fn(g, |x| 2.0 * (2.0 * x).cos());
        assert!(d.max_abs_diff(&exact) < 1e-12);
        let back = spectral_antiderivative(&d).unwrap();
        assert!(back.max_abs_diff(&f) < 1e-12);
    }
}
