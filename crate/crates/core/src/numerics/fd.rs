//! Central finite-difference stencils (weights from Fornberg's recursion).

use std::ops::{Add, Mul};

use num::{Complex, Zero};

use super::grid::SampledField;
use crate::error::{config, Result};

/// Central stencil for the `order`-th derivative on unit spacing.
#[derive(Debug, Clone, PartialEq)]
pub struct Stencil {
    pub order: usize,
    pub accuracy: usize,
    pub half_width: usize,
    /// weights for offsets `-half_width ..= half_width`
    pub weights: Vec<f64>,
}

impl Stencil {
    pub fn central(order: usize, accuracy: usize) -> Result<Self> {
        const OP: &str = "numerics::fd_derivative";
        if order == 0 {
            return Err(config(OP, "derivative order must be at least 1"));
        }
        if accuracy == 0 || accuracy % 2 != 0 || accuracy > 8 {
            return Err(config(OP, format!("accuracy must be one of 2, 4, 6, 8; got {accuracy}")));
        }
        let half_width = accuracy / 2 + order.div_ceil(2) - 1;
        let offsets: Vec<f64> = (-(half_width as i64)..=half_width as i64).map(|j| j as f64).collect();
        let weights = fornberg(0.0, &offsets, order);
        Ok(Self {
            order,
            accuracy,
            half_width,
            weights,
        })
    }

    pub fn width(&self) -> usize {
        2 * self.half_width + 1
    }

    /// Applies the stencil to a callable at `x` with spacing `h`.
    pub fn apply<T>(&self, f: impl Fn(f64) -> T, x: f64, h: f64) -> T
    where
        T: Copy + Zero + Add<Output = T> + Mul<f64, Output = T>,
    {
        let r = self.half_width as i64;
        // weights sum to zero; differencing against the centre keeps
        // constants exactly annihilated
        let centre = f(x);
        let mut acc = T::zero();
        for (w, j) in self.weights.iter().zip(-r..=r) {
            if *w != 0.0 && j != 0 {
                acc = acc + (f(x + j as f64 * h) + centre * -1.0) * *w;
            }
        }
        acc * h.powi(-(self.order as i32))
    }
}

/// Weights of the `order`-th derivative at `x0` for the given nodes.
fn fornberg(x0: f64, nodes: &[f64], order: usize) -> Vec<f64> {
    let n = nodes.len();
    // c[j][k]: weight of node j for derivative k
    let mut c = vec![vec![0.0; order + 1]; n];
    let mut c1 = 1.0;
    let mut c4 = nodes[0] - x0;
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i] - x0;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|row| row[order]).collect()
}

/// Periodic central-difference derivative of a sampled field.
pub fn fd_derivative(field: &SampledField, order: usize, accuracy: usize) -> Result<SampledField> {
    let st = Stencil::central(order, accuracy)?;
    let n = field.grid().n();
    if st.width() > n {
        return Err(config(
            "numerics::fd_derivative",
            format!("stencil of width {} does not fit a {n}-point grid", st.width()),
        ));
    }
    let h = field.grid().h();
    let v = field.values();
    let r = st.half_width as i64;
    let scale = h.powi(-(order as i32));
    let out: Vec<Complex<f64>> = (0..n as i64)
        .map(|i| {
            let centre = v[i as usize];
            let mut acc = Complex::new(0.0, 0.0);
            for (w, j) in st.weights.iter().zip(-r..=r) {
                if j != 0 {
                    acc += (v[(i + j).rem_euclid(n as i64) as usize] - centre) * *w;
                }
            }
            acc * scale
        })
        .collect();
    SampledField::new(*field.grid(), out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::grid::Grid1D;

    #[test]
    fn classic_weights() {
        let s = Stencil::central(1, 2).unwrap();
        assert_eq!(s.weights, vec![-0.5, 0.0, 0.5]);
        let s = Stencil::central(2, 2).unwrap();
        assert_eq!(s.weights, vec![1.0, -2.0, 1.0]);
        let s = Stencil::central(1, 4).unwrap();
        let expect = [1.0 / 12.0, -2.0 / 3.0, 0.0, 2.0 / 3.0, -1.0 / 12.0];
        for (a, b) in s.weights.iter().zip(expect) {
            assert!((a - b).abs() < 1e-15);
        }
        assert_eq!(Stencil::central(3, 2).unwrap().width(), 5);
    }

    #[test]
    fn sine_derivative_accuracy_8() {
        let g = Grid1D::periodic_2pi(128).unwrap();
        let d = fd_derivative(&SampledField::from_fn(g, f64::sin), 1, 8).unwrap();
        assert!(d.max_abs_diff(&SampledField::from_fn(g, f64::cos)) < 1e-10);
    }

    #[test]
    fn constant_has_zero_derivative() {
        let g = Grid1D::periodic_2pi(16).unwrap();
        let d = fd_derivative(&SampledField::from_fn(g, |_| 3.25), 2, 4).unwrap();
        assert!(d.values().iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn second_derivative_of_exponential() {
        let g = Grid1D::periodic_2pi(128).unwrap();
        let f = SampledField::from_complex_fn(g, |x| Complex::from_polar(1.0, x));
        let d = fd_derivative(&f, 2, 8).unwrap();
        assert!(d.max_abs_diff(&f.map(|v| -v)) < 1e-9);
    }

    #[test]
    fn convergence_order_matches_accuracy() {
        for acc in [2usize, 4, 6, 8] {
            let err = |n: usize| {
                let g = Grid1D::periodic_2pi(n).unwrap();
                let d = fd_derivative(&SampledField::from_fn(g, f64::sin), 1, acc).unwrap();
                d.max_abs_diff(&SampledField::from_fn(g, f64::cos))
            };
            let (n0, n1) = if acc == 8 { (16, 32) } else { (32, 64) };
            let observed = (err(n0) / err(n1)).log2();
            assert!(
                (observed - acc as f64).abs() <= 0.1 * acc as f64,
                "accuracy {acc}: observed order {observed}"
            );
        }
    }

    #[test]
    fn stencil_too_wide() {
        let g = Grid1D::periodic_2pi(8).unwrap();
        assert!(fd_derivative(&SampledField::from_fn(g, f64::sin), 4, 8).is_err());
        assert!(Stencil::central(1, 3).is_err());
    }

    #[test]
    fn callable_stencil() {
        let s = Stencil::central(3, 4).unwrap();
        let v = s.apply(|x: f64| x.sin(), 0.3, 0.01);
        assert!((v + 0.3f64.cos()).abs() < 1e-8);
    }
}
