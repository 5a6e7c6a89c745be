//! Verification harness: a zoo of test functions with known smoothness,
//! power-law fits along dyadic `σ`-ladders, and per-`σ` comparisons of
//! approximation errors with the smoothness measures that should control
//! them.

mod checks;
mod properties;
mod rate;
mod suite;
pub mod zoo;

pub use checks::{
    direct_estimate_check, dyadic_weight, inverse_estimate_check, smoothness_of_operator_check, CheckParams,
    EquivalenceReport, HarnessConfig, OperatorFamily, PreparedOperator, Verdict, INNER_FRACTION,
};
pub use properties::{
    convergence_checks, eq0_rows, global_properties, identity_residual, k_ratios, matched_pair, member_properties,
    modulus_properties, modulus_slope, partner_for, polynomial_reproduction, property_suite, st1_checks, st1_rows,
    tau_properties, CheckKind, Eq0Row, PropertyCheck, PropertyConfig, St1Row,
};
pub use rate::{default_ladder, dyadic_ladder, rate_fit, RateTable, MIN_RUNGS};
pub use suite::{corollary_case, equivalence_suite, CorollaryCase, CorollaryId, CorollarySetup, PropertySeries};
pub use zoo::{zoo, zoo_with_seed, ExpectedAlpha, Regularity, ZooFunction, DEFAULT_ZOO_SEED};
