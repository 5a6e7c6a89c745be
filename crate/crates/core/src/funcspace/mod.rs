//! Functions on the real line, their `L_p` norms, sampling sets `X_σ` and the
//! discrete seminorm `‖f‖_{ℓ_p(X_σ)} = (σ⁻¹ Σ_{ξ∈X_σ} |f(ξ)|^p)^{1/p}`.

mod function;
mod grid;
mod norm;

pub use function::{DecayClass, Interval, RealFunction};
pub use grid::{make_kadec_grid, make_uniform_grid, GridKind, GridSet, DEFAULT_GAMMA};
pub(crate) use norm::pow_abs;
pub use norm::{discrete_seminorm, discrete_seminorm_of_values, lp_norm, lp_norm_report, DiscreteSeminorm, LpNorm};
