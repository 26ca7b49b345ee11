use num::Complex;

use crate::error::{config, Result};

/// Uniform periodic grid on `[a, b)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    n: usize,
    a: f64,
    b: f64,
}

impl Grid1D {
    pub const MIN_POINTS: usize = 8;

    pub fn new(n: usize, a: f64, b: f64) -> Result<Self> {
        const OP: &str = "numerics::grid";
        if n < Self::MIN_POINTS {
            return Err(config(OP, format!("grid needs at least {} points, got {n}", Self::MIN_POINTS)));
        }
        if !(a.is_finite() && b.is_finite()) || b <= a {
            return Err(config(OP, format!("invalid domain [{a}, {b})")));
        }
        Ok(Self { n, a, b })
    }

    /// `[0, 2π)` with `n` points.
    pub fn periodic_2pi(n: usize) -> Result<Self> {
        Self::new(n, 0.0, 2.0 * std::f64::consts::PI)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn length(&self) -> f64 {
        self.b - self.a
    }

    pub fn h(&self) -> f64 {
        (self.b - self.a) / self.n as f64
    }

    pub fn x(&self, j: usize) -> f64 {
        self.a + j as f64 * self.h()
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |j| self.x(j))
    }
}

/// Complex samples on a periodic grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledField {
    grid: Grid1D,
    values: Vec<Complex<f64>>,
}

impl SampledField {
    pub fn new(grid: Grid1D, values: Vec<Complex<f64>>) -> Result<Self> {
        if values.len() != grid.n() {
            return Err(config(
                "numerics::sampled_field",
                format!("{} values for a {}-point grid", values.len(), grid.n()),
            ));
        }
        Ok(Self { grid, values })
    }

    pub fn from_real(grid: Grid1D, values: &[f64]) -> Result<Self> {
        Self::new(grid, values.iter().map(|&v| Complex::new(v, 0.0)).collect())
    }

    pub fn from_fn(grid: Grid1D, f: impl Fn(f64) -> f64) -> Self {
        let values = grid.points().map(|x| Complex::new(f(x), 0.0)).collect();
        Self { grid, values }
    }

    pub fn from_complex_fn(grid: Grid1D, f: impl Fn(f64) -> Complex<f64>) -> Self {
        let values = grid.points().map(f).collect();
        Self { grid, values }
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn values(&self) -> &[Complex<f64>] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex<f64>] {
        &mut self.values
    }

    pub fn real_parts(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.re).collect()
    }

    pub fn map(&self, f: impl Fn(Complex<f64>) -> Complex<f64>) -> Self {
        Self {
            grid: self.grid,
            values: self.values.iter().copied().map(f).collect(),
        }
    }

    pub fn max_abs_diff(&self, other: &SampledField) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Rectangle-rule integral over the period (spectrally accurate for
    /// smooth periodic data).
    pub fn integral(&self) -> Complex<f64> {
        self.values.iter().sum::<Complex<f64>>() * self.grid.h()
    }
}
