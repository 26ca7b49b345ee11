//! Constructive tools for integrable differential equations: exact
//! operator and jet-space algebra, symmetry and conservation-law checks,
//! transform pipelines, spectral solvers, resonance triads and
//! conservation-monitored three-body dynamics.

pub mod diffop;
pub mod error;
pub mod exprjet;
pub mod io;
pub mod numerics;
pub mod resonance;
pub mod spectral;
pub mod symmetry;
pub mod threebody;
pub mod transforms;
pub mod verify;
pub mod wronskian;

pub use error::{Error, Result};
