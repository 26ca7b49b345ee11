//! Planar equal-mass three-body problem with pair forces `z_jk f(|z_jk|²)`,
//! written in complex coordinates. `f < 0` attracts.

mod calogero;
mod law;
mod state;
mod studies;

pub use calogero::{
    calogero_energy, calogero_potential, calogero_rhs, calogero_run, calogero_scattering,
    default_config as calogero_default_config, CalogeroRun, ScatteringReport,
};
pub use law::{ForceLaw, LawSpec};
pub use state::{
    angular_momentum, default_config, drifts, energy, inertia_momentum, lagrange_jacobi_residual, monitors, rhs,
    simulate, DriftReport, MonitorReport, ThreeBodyState, COLLISION_DISTANCE, PAIRS,
};
pub use studies::{
    circular_two_body, equidistance_audit, half_inertia_acceleration, inertia_rate, lagrange_orbit,
    lagrange_orbit_with_omega, poincare_inertia_study, rigid_rotation, convexity_audit, two_body_reduce,
    zero_energy_rotation, ConvexityReport, ConvexitySample, EquidistanceReport, InertiaReport, LagrangeOrbit,
    TwoBodyReport,
};
