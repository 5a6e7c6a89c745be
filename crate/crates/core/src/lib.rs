//! Generalized sampling operators on the real line and the measures of
//! smoothness that characterize their `L_p` approximation order.
//!
//! The crate is `no_std` (with `alloc`). Everything here is a pure
//! computation over immutable values; IO, configuration and reporting live in
//! the companion `sampsmooth` crate.
//!
//! Layout:
//!
//! * [`funcspace`]: function representation, composite quadrature, `L_p`
//!   norms, sampling grids and the discrete `ℓ_p(X_σ)` seminorm.
//! * [`kernels`]: sinc, B-spline, Gaussian and Riesz kernels.
//! * [`operators`]: sampling operators, Gaussian interpolation on irregular
//!   grids, band-limited projection and Sobolev-type seminorms.
//! * [`smoothness`]: finite differences, moduli of smoothness, the averaged
//!   operator `f_{δ,r}`, τ-moduli and K-functional realizations.
//! * [`analysis`]: test-function zoo, rate fitting and the direct/inverse
//!   equivalence harness.

#![no_std]
// `!(x > 0.0)` style guards are used on purpose: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod analysis;
pub mod error;
pub mod funcspace;
pub mod kernels;
pub mod numeric;
pub mod operators;
pub mod quadrature;
pub mod smoothness;

pub use error::{Error, Result};
pub use funcspace::{DecayClass, GridKind, GridSet, Interval, RealFunction};
pub use kernels::{Kernel, KernelFamily};
pub use quadrature::QuadratureSpec;
