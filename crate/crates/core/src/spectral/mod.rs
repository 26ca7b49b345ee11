//! Spectral and residual-based machinery: periodic heat and Burgers solvers,
//! dispersion relations, PDE residual checks and the Jost function.

mod dispersion;
mod heat;
mod jost;
mod residual;

pub use dispersion::{
    dispersion_hessian, dispersion_relation, poly_roots, DispersionBranch, DispersionReport, DispersionSpec,
    DispersionTerm,
};
pub use heat::{burgers_direct, burgers_residual, burgers_solve, heat_solve, heat_solve_with, BurgersReport};
pub use jost::{jost_ode_oracle, jost_solve, kernel, JostConvention, JostProblem, JostSolution};
pub use residual::{
    kdv_soliton, nls_soliton, pde_residual, resolve_nls_sign, Factor, PdeSpec, PdeTerm, ResidualReport, ResidualRow,
    ResidualWindow, SignResolution,
};
