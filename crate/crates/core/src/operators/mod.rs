//! Sampling operators `S_σ^φ`, Gaussian interpolation on irregular grids,
//! the low-pass projection `g_σ` and Sobolev-type seminorms.

mod bandlimited;
mod interpolation;
mod sampling;
mod seminorm;

pub use bandlimited::{bandlimited_project, BandlimitedFunction, SpectralGrid};
pub use interpolation::{
    gaussian_interpolate, GaussianInterpolant, InterpolantSolution, CONDITION_LIMIT, GAUSSIAN_STENCIL,
};
pub(crate) use sampling::panels_for;
pub use sampling::{operator_error, Applied, SampledFunction, SamplingOperator};
pub use seminorm::{fractional_seminorm, sobolev_seminorm, RICHARDSON_TOLERANCE};
