//! Exact conservation-law and symmetry verdicts for polynomial dynamical
//! systems and evolution equations, plus numerical drift monitoring for
//! conserved quantities that are not polynomial.

mod drift;
mod pde;
mod reduced;
mod system;

pub use drift::{cl_drift, NumericCl};
pub use pde::{min_depth, pde_symmetry_check, PdeSymmetryVerdict};
pub use reduced::{commuting_polynomials, proportionality, sqrt_flow_commutants};
pub use system::{
    corollary_g0_check, is_conservation_law, is_symmetry, scale_symmetry, ClVerdict, CompiledPoly, DynamicalSystem,
    G0Check, SymmetryCandidate, SymmetryReport, SymmetryVerdict,
};
