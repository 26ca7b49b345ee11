//! Shared numerical kernels.

pub mod fd;
pub mod fourier;
pub mod grid;
pub mod linalg;
pub mod ode;
pub mod quadrature;
pub mod roots;

pub use fd::{fd_derivative, Stencil};
pub use fourier::{dft, idft, spectral_antiderivative, spectral_derivative, Spectrum};
pub use grid::{Grid1D, SampledField};
pub use ode::{integrate, rk4_step, rkf45_step, IntegratorConfig, Method, Rhs};
pub use quadrature::quadrature;
pub use roots::{bracket_roots, newton_bisect};
