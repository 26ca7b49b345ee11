//! Resonant wave interactions: triads with their conservation laws and
//! elliptic solutions, quartets, and the elliptic functions themselves.

mod elliptic;
mod quartet;
mod triad;

pub use elliptic::{carlson_rf, ellip_f, ellip_k, jacobi};
pub use quartet::{quartet_invariants, quartet_rhs, QuartetSystem};
pub use triad::{
    closed_form, invariants, reduced_polynomial, triad_rhs, EllipticParams, TriadMode, TriadSystem, SEPARATRIX_TOL,
};
