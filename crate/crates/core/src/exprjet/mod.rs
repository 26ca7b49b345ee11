//! Exact polynomial algebra over jet coordinates: vector fields acting as
//! derivations, Lie brackets and total-derivative prolongation.
//!
//! Every verdict produced here is exact; coefficients are arbitrary
//! precision rationals.

mod coord;
mod field;
mod parse;
mod poly;
mod prolong;

pub use coord::JetCoord;
pub use field::{apply_field, lie_bracket, JetVectorField};
pub use parse::parse_polynomial;
pub use poly::{rat, rat_int, rat_to_f64, JetPolynomial, Monomial, Rat};
pub use prolong::{prolong, total_derivative};
