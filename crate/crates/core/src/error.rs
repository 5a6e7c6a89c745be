use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("`{label}` evaluated to a non-finite value at x = {x}")]
    Evaluation { label: String, x: f64 },

    #[error("grid separation violated: minimum gap {min_gap} is not above 2γ/σ = {required}")]
    Separation { min_gap: f64, required: f64 },

    #[error("Kadec perturbation ε = {epsilon} must satisfy 0 ≤ ε < 1/4")]
    KadecBound { epsilon: f64 },

    #[error("B-spline order {0} is below 2")]
    SplineOrder(usize),

    #[error("quadrature did not converge: residual {residual:e} exceeds {tolerance:e}")]
    Tolerance { residual: f64, tolerance: f64 },

    #[error("sampling grid does not cover the truncation stencil: missing [{lo}, {hi}]")]
    Coverage { lo: f64, hi: f64 },

    #[error("spectral grid too coarse: {fraction:e} of the energy sits near the Nyquist frequency")]
    Resolution { fraction: f64 },

    #[error("finite-difference derivative unstable: Richardson disagreement {disagreement:e}")]
    Derivative { disagreement: f64 },

    #[error("interpolation system is ill-conditioned (condition estimate {estimate:e})")]
    IllConditioned { estimate: f64 },

    #[error("degenerate rate fit: value {value} at σ = {sigma} is not positive")]
    DegenerateFit { sigma: f64, value: f64 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
