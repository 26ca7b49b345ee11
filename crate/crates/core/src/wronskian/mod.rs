//! Monic linear ODEs with a prescribed kernel, built from Wronskians and
//! checked by pointwise residuals.

mod basis;
mod kernel;

pub use basis::{BasisFunction, FD_STEP};
pub use kernel::{
    exact_operator_from_polynomials, membership_test, operator_from_kernel, sin_sqrt_reference_comparison, wronskian_zeros,
    wronskian_det, KernelSpec, ReferenceFormReport, SampledOperator, DEGENERACY_TOL, MAX_ORDER, MIN_SAMPLES,
    RESIDUAL_TOL,
};
