//! Exact-solution pipelines: quadrature reduction of `y'' = f(y)`, the
//! hodograph solution of `u_t = 2uu_x`, linearization of the Thomas
//! equation, the Cole–Hopf pair and Burgers scaling.

mod colehopf;
mod hodograph;
mod reduce;
mod thomas;

pub use colehopf::{
    characteristic_solve, cole_hopf, inverse_cole_hopf, reduce_to_inviscid, scale_burgers, BurgersScaling,
    InviscidReduction, Xtu, MEAN_TOL,
};
pub use hodograph::{has_broken, hodograph_solve, HodographSolution, MonotoneProfile, PROFILE_SAMPLES};
pub use reduce::{quadrature_reduce, Branch, QuadratureProblem};
pub use thomas::{
    linear_residual, reduced_residual, thomas_delinearize, thomas_general_solution, thomas_linearize,
    thomas_residual, Field2D, ThomasParams, ThomasSolution,
};
