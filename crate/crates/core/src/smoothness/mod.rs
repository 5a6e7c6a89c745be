//! Measures of smoothness: finite differences and `ω_r`, the averaged
//! operator `f_{δ,r}` with its discrete deviation, the τ-modulus, and
//! K-functional realizations.

mod averaged;
mod kfunctional;
mod modulus;
mod tau;

pub use averaged::{
    averaged_deviation_function, averaged_identity_check, averaged_op, averaged_weights, ball_average,
    discrete_avg_deviation, normalizing_constant,
};
pub use kfunctional::{
    frac_k, k_realization, semidiscrete_k, smoothness_report, Realization, Semidiscrete, SmoothnessParams,
    SmoothnessReport,
};
pub use modulus::{
    difference_function, finite_difference, modulus, modulus_with_steps, step_grid, ModulusProfile, DEFAULT_H_GRID,
    STEPS_PER_OCTAVE,
};
pub use tau::{local_modulus, tau_modulus, LocalGrid, TauProbe};
