//! Linear ordinary differential operators with exact rational-function
//! coefficients: Leibniz composition, commutators, the Euler substitution
//! `x = e^t` and exact application to rational functions.

mod op;
mod parse;
mod rational;
mod upoly;

pub use op::{apply_op, commutator, compose, euler_substitute, stirling_first, LinearDiffOp};
pub use parse::parse_operator;
pub use rational::RationalFn;
pub use upoly::UPoly;
