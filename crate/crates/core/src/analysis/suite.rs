use alloc::string::String;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use super::checks::{EquivalenceReport, HarnessConfig, OperatorFamily, PreparedOperator, Verdict};
use super::rate::{rate_fit, RateTable};
use super::zoo::ZooFunction;
use crate::error::{Error, Result};
use crate::funcspace::RealFunction;
use crate::smoothness::{discrete_avg_deviation, frac_k, modulus};

/// The five equivalence statements the suite instantiates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CorollaryId {
    /// Sinc sampling; three equivalent properties.
    Cor3S,
    /// Riesz-kernel sampling; smoothness through the fractional K-functional.
    Cor3SR,
    /// B-spline sampling; `s = 1`.
    Cor3Sr,
    /// Gaussian sampling; `s = 1`.
    CorGa,
    /// Gaussian interpolation on a Kadec grid; `p = 2`.
    CorHa,
}

impl CorollaryId {
    pub const ALL: [CorollaryId; 5] = [
        CorollaryId::Cor3S,
        CorollaryId::Cor3SR,
        CorollaryId::Cor3Sr,
        CorollaryId::CorGa,
        CorollaryId::CorHa,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CorollaryId::Cor3S => "cor3S",
            CorollaryId::Cor3SR => "cor3SR",
            CorollaryId::Cor3Sr => "cor3Sr",
            CorollaryId::CorGa => "corGa",
            CorollaryId::CorHa => "corHa",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == name)
    }

    /// Operator and orders used when nothing else is configured.
    pub fn default_setup(self) -> CorollarySetup {
        let (family, r, s) = match self {
            CorollaryId::Cor3S => (OperatorFamily::Sinc, 1, 2.0),
            CorollaryId::Cor3SR => (OperatorFamily::Riesz { s: 2.0, delta: 2.0 }, 1, 2.0),
            CorollaryId::Cor3Sr => (OperatorFamily::BSpline(3), 1, 1.0),
            CorollaryId::CorGa => (OperatorFamily::Gaussian, 1, 1.0),
            CorollaryId::CorHa => (
                OperatorFamily::GaussianInterpolation {
                    epsilon: 0.2,
                    seed: 7,
                    half_width: 4.0,
                },
                1,
                1.0,
            ),
        };
        CorollarySetup { id: self, family, r, s }
    }
}

/// A corollary with concrete operator and orders. `s` is the smoothness
/// order of property (ii): a modulus order, or the fractional order for
/// [`CorollaryId::Cor3SR`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorollarySetup {
    pub id: CorollaryId,
    pub family: OperatorFamily,
    pub r: usize,
    pub s: f64,
}

impl CorollarySetup {
    pub fn validate(&self, p: f64) -> Result<()> {
        if self.r == 0 {
            return Err(Error::invalid("r", "must be at least 1"));
        }
        if !(self.s > 0.0) || self.s > 2.0 * self.r as f64 {
            return Err(Error::invalid(
                "s",
                alloc::format!("s = {} outside (0, 2r] (need s <= 2r)", self.s),
            ));
        }
        if self.id != CorollaryId::Cor3SR && self.s.fract() != 0.0 {
            return Err(Error::invalid("s", "must be an integer for modulus-based corollaries"));
        }
        if !(p >= 1.0 && p.is_finite()) {
            return Err(Error::invalid("p", "need 1 <= p < ∞"));
        }
        if self.id == CorollaryId::CorHa && p != 2.0 {
            return Err(Error::Precondition(
                "irregular-grid interpolation is covered for p = 2 only".into(),
            ));
        }
        let family_ok = matches!(
            (self.id, self.family),
            (CorollaryId::Cor3S, OperatorFamily::Sinc)
                | (CorollaryId::Cor3SR, OperatorFamily::Riesz { .. })
                | (CorollaryId::Cor3Sr, OperatorFamily::BSpline(_))
                | (CorollaryId::CorGa, OperatorFamily::Gaussian)
                | (CorollaryId::CorHa, OperatorFamily::GaussianInterpolation { .. })
        );
        if !family_ok {
            return Err(Error::invalid(
                "kernel",
                alloc::format!("{} does not match {}", self.family.name(), self.id.name()),
            ));
        }
        Ok(())
    }
}

/// One measured property along the ladder, with its rate fit when the
/// values admit one.
#[derive(Debug, Clone, PartialEq)]
pub struct PropertySeries {
    pub name: String,
    pub values: Vec<f64>,
    pub table: Option<RateTable>,
}

impl PropertySeries {
    fn new(name: &str, sigmas: &[f64], values: Vec<f64>) -> Self {
        PropertySeries {
            name: name.into(),
            table: rate_fit(name, sigmas, &values).ok(),
            values,
        }
    }

    pub fn alpha(&self) -> Option<f64> {
        self.table.as_ref().map(|t| t.fitted_alpha)
    }
}

/// Outcome for one zoo member under one corollary.
#[derive(Debug, Clone, PartialEq)]
pub struct CorollaryCase {
    pub corollary: CorollaryId,
    pub function: String,
    pub sigmas: Vec<f64>,
    /// (i), (ii) and, for sinc, (iii).
    pub properties: Vec<PropertySeries>,
    /// Pairwise comparisons of the properties, first against the others.
    pub reports: Vec<EquivalenceReport>,
    /// The predicted exponent lies inside `(0, s)`, where the corollary
    /// forces the rates to agree; outside it only the direct bound applies.
    pub rate_regime: bool,
    /// `max α - min α` over the fitted properties.
    pub alpha_spread: Option<f64>,
    pub verdict: Verdict,
}

/// `‖f_{1/(2σ),r} - f‖_{ℓ_p(X_σ)}`.
fn discrete_term(
    f: &RealFunction,
    op: &PreparedOperator,
    sigma: f64,
    r: usize,
    p: f64,
    cfg: &HarnessConfig,
) -> Result<f64> {
    let grid = op.grid(f, sigma)?;
    discrete_avg_deviation(f, &grid, 0.5 / sigma, r, p, &cfg.quad)
}

/// Runs one zoo member through a corollary.
pub fn corollary_case(
    setup: &CorollarySetup,
    op: &PreparedOperator,
    member: &ZooFunction,
    p: f64,
    ladder: &[f64],
    cfg: &HarnessConfig,
) -> Result<CorollaryCase> {
    setup.validate(p)?;
    let f = &member.f;
    let mut err = Vec::new();
    let mut smooth = Vec::new();
    let mut operator_smooth = Vec::new();
    for &sigma in ladder {
        err.push(op.error(f, sigma, p, &cfg.quad)?);
        let disc = discrete_term(f, op, sigma, setup.r, p, cfg)?;
        let second = if setup.id == CorollaryId::Cor3SR {
            frac_k(f, setup.s, p, sigma, &cfg.quad)?.value
        } else {
            modulus(f, setup.s as usize, 1.0 / sigma, p, &cfg.quad, cfg.h_grid_size)?
        };
        smooth.push(disc + second);
        if setup.id == CorollaryId::Cor3S {
            operator_smooth.push(op.scaled_seminorm(f, sigma, setup.s as usize, p, &cfg.quad)?);
        }
    }
    let mut properties = alloc::vec![
        PropertySeries::new("error", ladder, err),
        PropertySeries::new("semidiscrete_k", ladder, smooth),
    ];
    if setup.id == CorollaryId::Cor3S {
        properties.push(PropertySeries::new("sobolev_scaled", ladder, operator_smooth));
    }
    let mut reports = Vec::new();
    for i in 0..properties.len() {
        for j in i + 1..properties.len() {
            reports.push(EquivalenceReport::assemble(
                properties[i].name.clone(),
                properties[j].name.clone(),
                ladder,
                properties[i].values.clone(),
                properties[j].values.clone(),
                cfg,
            ));
        }
    }
    let rate_regime = match member.expected_alpha(p, setup.s) {
        super::zoo::ExpectedAlpha::Finite(a) => a < setup.s,
        super::zoo::ExpectedAlpha::Unbounded => false,
    };
    let alphas: Vec<f64> = properties.iter().filter_map(|s| s.alpha()).collect();
    let alpha_spread = (alphas.len() == properties.len()).then(|| {
        alphas.iter().copied().fold(f64::NEG_INFINITY, f64::max) - alphas.iter().copied().fold(f64::INFINITY, f64::min)
    });
    let ok = if rate_regime {
        reports.iter().all(|r| r.verdict.passed()) && alpha_spread.is_some_and(|d| d <= cfg.alpha_tolerance)
    } else {
        // the direct bound error ≲ smoothness survives saturation
        let direct = &reports[0];
        direct.noise_floor || (!direct.violation && direct.ratio_max <= cfg.spread_bound)
    };
    Ok(CorollaryCase {
        corollary: setup.id,
        function: member.name.clone(),
        sigmas: ladder.to_vec(),
        properties,
        reports,
        rate_regime,
        alpha_spread,
        verdict: Verdict::from_bool(ok),
    })
}

/// Every member of `members` through the corollary, sequentially.
pub fn equivalence_suite(
    setup: &CorollarySetup,
    members: &[ZooFunction],
    p: f64,
    ladder: &[f64],
    cfg: &HarnessConfig,
) -> Result<Vec<CorollaryCase>> {
    setup.validate(p)?;
    let op = PreparedOperator::new(setup.family, &cfg.quad)?;
    members
        .iter()
        .map(|m| corollary_case(setup, &op, m, p, ladder, cfg))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for id in CorollaryId::ALL {
            assert_eq!(CorollaryId::parse(id.name()), Some(id));
            id.default_setup().validate(2.0).unwrap();
        }
        assert!(CorollaryId::parse("cor9").is_none());
    }

    #[test]
    fn irregular_corollary_is_l2_only() {
        let setup = CorollaryId::CorHa.default_setup();
        assert!(matches!(setup.validate(1.0), Err(Error::Precondition(_))));
    }

    #[test]
    fn mismatched_family_is_rejected() {
        let mut setup = CorollaryId::Cor3S.default_setup();
        setup.family = OperatorFamily::Gaussian;
        assert!(setup.validate(2.0).is_err());
    }
}
