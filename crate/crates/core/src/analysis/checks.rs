use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use super::rate::rate_fit;
use crate::error::{Error, Result};
use crate::funcspace::{
    lp_norm, make_kadec_grid, make_uniform_grid, DecayClass, GridSet, Interval, RealFunction, DEFAULT_GAMMA,
};
use crate::kernels::{Kernel, KernelFamily};
use crate::operators::{operator_error, panels_for, sobolev_seminorm, GaussianInterpolant, SamplingOperator};
use crate::quadrature::QuadratureSpec;
use crate::smoothness::{semidiscrete_k, SmoothnessParams};

/// The operators exercised by the harness.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OperatorFamily {
    Sinc,
    BSpline(usize),
    Gaussian,
    Riesz {
        s: f64,
        delta: f64,
    },
    /// Gaussian interpolation on the Kadec grid `σ⁻¹(j + u_j)`, `|u_j| <= ε`,
    /// over `[-half_width, half_width]`; errors are measured on the inner
    /// [`INNER_FRACTION`] of that interval.
    GaussianInterpolation {
        epsilon: f64,
        seed: u64,
        half_width: f64,
    },
}

/// Share of the interpolation window on which errors are measured.
pub const INNER_FRACTION: f64 = 0.6;

impl OperatorFamily {
    pub fn name(&self) -> String {
        match self {
            OperatorFamily::Sinc => "sinc".into(),
            OperatorFamily::BSpline(r) => alloc::format!("bspline{r}"),
            OperatorFamily::Gaussian => "gaussian".into(),
            OperatorFamily::Riesz { s, delta } => alloc::format!("riesz(s={s},delta={delta})"),
            OperatorFamily::GaussianInterpolation { epsilon, .. } => alloc::format!("gauss-interp(eps={epsilon})"),
        }
    }

    /// Truncation budget handed to [`SamplingOperator::for_function`].
    pub fn tail_budget(&self) -> f64 {
        match self {
            OperatorFamily::Sinc => 1e-4,
            OperatorFamily::Riesz { .. } => 1e-6,
            _ => 1e-16,
        }
    }
}

/// An [`OperatorFamily`] with its kernel built once.
#[derive(Debug, Clone)]
pub struct PreparedOperator {
    family: OperatorFamily,
    kernel: Option<Kernel>,
}

impl PreparedOperator {
    pub fn new(family: OperatorFamily, quad: &QuadratureSpec) -> Result<Self> {
        let kernel = match family {
            OperatorFamily::Sinc => Some(Kernel::sinc()),
            OperatorFamily::BSpline(r) => Some(Kernel::bspline(r)?),
            OperatorFamily::Gaussian => Some(Kernel::gaussian()),
            OperatorFamily::Riesz { s, delta } => Some(Kernel::from_family(KernelFamily::Riesz { s, delta }, quad)?),
            OperatorFamily::GaussianInterpolation {
                epsilon, half_width, ..
            } => {
                if !(0.0..0.25).contains(&epsilon) {
                    return Err(Error::KadecBound { epsilon });
                }
                if !(half_width > 0.0) {
                    return Err(Error::invalid("half_width", "must be positive"));
                }
                None
            }
        };
        Ok(PreparedOperator { family, kernel })
    }

    pub fn family(&self) -> OperatorFamily {
        self.family
    }

    /// Interpolatory on the nested dyadic grids `σ⁻¹ℤ ⊂ (2σ)⁻¹ℤ`.
    pub fn is_nested_interpolatory(&self) -> bool {
        self.kernel.as_ref().is_some_and(|k| k.is_interpolatory())
    }

    fn interpolation_window(&self) -> Option<(Interval, Interval)> {
        match self.family {
            OperatorFamily::GaussianInterpolation { half_width, .. } => Some((
                Interval::symmetric(half_width),
                Interval::symmetric(INNER_FRACTION * half_width),
            )),
            _ => None,
        }
    }

    /// The sampling set `X_σ` behind the operator, restricted to where `f`
    /// lives.
    pub fn grid(&self, f: &RealFunction, sigma: f64) -> Result<GridSet> {
        match self.family {
            OperatorFamily::GaussianInterpolation {
                epsilon,
                seed,
                half_width,
            } => make_kadec_grid(sigma, Interval::symmetric(half_width), epsilon, seed),
            _ => {
                let w = f.window();
                let window = if f.is_compact() { w.expand(1.0 / sigma) } else { w };
                make_uniform_grid(sigma, window, DEFAULT_GAMMA)
            }
        }
    }

    fn sampling(&self, f: &RealFunction, sigma: f64) -> Result<SamplingOperator> {
        let kernel = self
            .kernel
            .clone()
            .ok_or_else(|| Error::Precondition("not a sampling operator".into()))?;
        SamplingOperator::for_function(kernel, sigma, f, self.family.tail_budget())
    }

    /// `G_σ f` as a function (with exact derivatives for sampling operators
    /// with smooth kernels).
    pub fn approximant(&self, f: &RealFunction, sigma: f64) -> Result<RealFunction> {
        match self.interpolation_window() {
            Some(_) => Ok(GaussianInterpolant::new(&self.grid(f, sigma)?, f)?.to_real_function()),
            None => Ok(self.sampling(f, sigma)?.bind(f)?.to_real_function()),
        }
    }

    /// `‖f - G_σ f‖_p`, on the inner window for interpolation.
    pub fn error(&self, f: &RealFunction, sigma: f64, p: f64, quad: &QuadratureSpec) -> Result<f64> {
        match self.interpolation_window() {
            Some((_, inner)) => {
                let g = self.approximant(f, sigma)?;
                let diff = f.sub(&g).with_window(inner, DecayClass::CompactSupport);
                lp_norm(&diff, p, &panels_for(sigma, quad))
            }
            None => operator_error(&self.sampling(f, sigma)?, f, p, quad),
        }
    }

    /// `σ^{-s} |G_σ f|_{W_p^s}`. For `f` without compact support the
    /// seminorm is taken over the window of `f`: beyond it the truncated
    /// stencil sums carry no information about `f`.
    pub fn scaled_seminorm(
        &self,
        f: &RealFunction,
        sigma: f64,
        s: usize,
        p: f64,
        quad: &QuadratureSpec,
    ) -> Result<f64> {
        let mut g = self.approximant(f, sigma)?;
        if !f.is_compact() {
            g = g.with_window(f.window(), DecayClass::None);
        }
        Ok(sigma.powi(-(s as i32)) * sobolev_seminorm(&g, s, p, &panels_for(sigma, quad))?)
    }

    /// `f` restricted the way [`error`](Self::error) sees it.
    pub fn measured_part(&self, f: &RealFunction) -> RealFunction {
        match self.interpolation_window() {
            Some((_, inner)) => f.clone().with_window(inner, DecayClass::CompactSupport),
            None => f.clone(),
        }
    }
}

/// Thresholds of the equivalence harness.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarnessConfig {
    pub quad: QuadratureSpec,
    /// Bound on `ratio_max / ratio_min` and on `ratio_max`.
    pub spread_bound: f64,
    /// Allowed disagreement between fitted exponents.
    pub alpha_tolerance: f64,
    pub h_grid_size: usize,
    /// Values at or below this are treated as numerically zero.
    pub noise_floor: f64,
    /// Largest `σ 2^k` used in the dyadic sum of the operator-smoothness check.
    pub sum_cap: f64,
    /// The dyadic sum stops early once a term drops below this fraction of
    /// the running sum, or once two successive ratios agree to within it
    /// times ten so that the geometric closure is reliable.
    pub tail_tolerance: f64,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig {
            quad: QuadratureSpec::default(),
            spread_bound: 50.0,
            alpha_tolerance: 0.1,
            h_grid_size: crate::smoothness::DEFAULT_H_GRID,
            noise_floor: 1e-9,
            sum_cap: 1024.0,
            tail_tolerance: 1e-3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }
}

/// Per-σ comparison `lhs ≲ rhs` with the ratio statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceReport {
    pub lhs_name: String,
    pub rhs_name: String,
    pub sigmas: Vec<f64>,
    pub lhs: Vec<f64>,
    pub rhs: Vec<f64>,
    /// `lhs / rhs`; NaN on rungs where both sides are at the noise floor.
    pub ratios: Vec<f64>,
    pub ratio_min: f64,
    pub ratio_max: f64,
    pub lhs_alpha: Option<f64>,
    pub rhs_alpha: Option<f64>,
    pub verdict: Verdict,
    /// Every rung had both sides at the noise floor.
    pub noise_floor: bool,
    /// Some rung had `rhs` at the floor while `lhs` was not.
    pub violation: bool,
}

impl EquivalenceReport {
    pub fn assemble(
        lhs_name: impl Into<String>,
        rhs_name: impl Into<String>,
        sigmas: &[f64],
        lhs: Vec<f64>,
        rhs: Vec<f64>,
        cfg: &HarnessConfig,
    ) -> Self {
        let floor = cfg.noise_floor;
        let mut violation = false;
        let ratios: Vec<f64> = lhs
            .iter()
            .zip(&rhs)
            .map(|(&l, &r)| {
                if l <= floor && r <= floor {
                    f64::NAN
                } else if r <= floor {
                    violation = true;
                    f64::INFINITY
                } else {
                    l / r
                }
            })
            .collect();
        let live: Vec<f64> = ratios.iter().copied().filter(|r| !r.is_nan()).collect();
        let noise_floor = live.is_empty();
        let (ratio_min, ratio_max) = if noise_floor {
            (0.0, 0.0)
        } else {
            (
                live.iter().copied().fold(f64::INFINITY, f64::min),
                live.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            )
        };
        let fit = |v: &[f64]| rate_fit("", sigmas, v).ok().map(|t| t.fitted_alpha);
        let ok = noise_floor
            || (!violation
                && ratio_max.is_finite()
                && ratio_min > 0.0
                && ratio_max <= cfg.spread_bound
                && ratio_max / ratio_min <= cfg.spread_bound);
        EquivalenceReport {
            lhs_name: lhs_name.into(),
            rhs_name: rhs_name.into(),
            sigmas: sigmas.to_vec(),
            lhs_alpha: fit(&lhs),
            rhs_alpha: fit(&rhs),
            lhs,
            rhs,
            ratios,
            ratio_min,
            ratio_max,
            verdict: Verdict::from_bool(ok),
            noise_floor,
            violation,
        }
    }

    pub fn spread(&self) -> f64 {
        if self.noise_floor {
            1.0
        } else {
            self.ratio_max / self.ratio_min
        }
    }
}

/// Order parameters shared by the three checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckParams {
    pub r: usize,
    pub s: usize,
    pub p: f64,
}

impl CheckParams {
    pub fn validate(&self) -> Result<()> {
        SmoothnessParams {
            r: self.r,
            s: self.s as f64,
            p: self.p,
            delta: 0.0,
            h_grid_size: 1,
        }
        .check_theorem_range()?;
        if self.s == 0 {
            return Err(Error::invalid("s", "must be at least 1"));
        }
        // the surrogate is only known to be equivalent to 𝒦 for s > 1/p
        if !(self.s as f64 * self.p > 1.0) {
            return Err(Error::invalid(
                "s",
                alloc::format!("need s > 1/p, got s = {} with p = {}", self.s, self.p),
            ));
        }
        Ok(())
    }
}

fn surrogate(
    f: &RealFunction,
    op: &PreparedOperator,
    sigma: f64,
    params: &CheckParams,
    cfg: &HarnessConfig,
) -> Result<f64> {
    let grid = op.grid(f, sigma)?;
    Ok(semidiscrete_k(f, &grid, params.r, params.s, params.p, &cfg.quad, cfg.h_grid_size)?.value)
}

/// `‖f - G_σ f‖_p` against the surrogate `𝒦_s(f, X_σ)_p` on each rung.
pub fn direct_estimate_check(
    f: &RealFunction,
    op: &PreparedOperator,
    params: &CheckParams,
    ladder: &[f64],
    cfg: &HarnessConfig,
) -> Result<EquivalenceReport> {
    params.validate()?;
    let mut lhs = Vec::with_capacity(ladder.len());
    let mut rhs = Vec::with_capacity(ladder.len());
    for &sigma in ladder {
        lhs.push(op.error(f, sigma, params.p, &cfg.quad)?);
        rhs.push(surrogate(f, op, sigma, params, cfg)?);
    }
    Ok(EquivalenceReport::assemble(
        "error",
        "semidiscrete_k",
        ladder,
        lhs,
        rhs,
        cfg,
    ))
}

/// `W_k = Σ_{ν ∈ (2^{k-1}, 2^k]} (ν+1)^{s-1}` (and `W_0 = 2^{s-1}` for `ν = 1`).
pub fn dyadic_weight(k: u32, s: usize) -> f64 {
    let e = s as i32 - 1;
    if k == 0 {
        return 2f64.powi(e);
    }
    let lo = (1u64 << (k - 1)) + 1;
    let hi = 1u64 << k;
    (lo..=hi).map(|nu| ((nu + 1) as f64).powi(e)).sum()
}

/// The inverse estimate: `𝒦_s(f, X_σ)_p` against
/// `E_σ + σ^{-s} Σ_{ν <= σ} (ν+1)^{s-1} E_ν`, where `E_ν = ‖f - G_ν f‖_p`
/// and `E_0 = ‖f‖_p`. The sum is grouped dyadically with the block
/// `(2^{k-1}, 2^k]` represented by its left end `E_{2^{k-1}}`.
pub fn inverse_estimate_check(
    f: &RealFunction,
    op: &PreparedOperator,
    params: &CheckParams,
    ladder: &[f64],
    cfg: &HarnessConfig,
) -> Result<EquivalenceReport> {
    params.validate()?;
    let mut errors: BTreeMap<u64, f64> = BTreeMap::new();
    let mut error_at = |nu: u64| -> Result<f64> {
        if let Some(e) = errors.get(&nu) {
            return Ok(*e);
        }
        let e = op.error(f, nu as f64, params.p, &cfg.quad)?;
        errors.insert(nu, e);
        Ok(e)
    };
    let e0 = lp_norm(&op.measured_part(f), params.p, &cfg.quad)?;
    let mut lhs = Vec::with_capacity(ladder.len());
    let mut rhs = Vec::with_capacity(ladder.len());
    for &sigma in ladder {
        let top = sigma.floor().max(1.0) as u64;
        let mut sum = e0;
        let mut k = 0u32;
        while (1u64 << k) <= top {
            let rep = if k == 0 { 1 } else { 1u64 << (k - 1) };
            sum += dyadic_weight(k, params.s) * error_at(rep)?;
            k += 1;
        }
        rhs.push(error_at(top)? + sigma.powi(-(params.s as i32)) * sum);
        lhs.push(surrogate(f, op, sigma, params, cfg)?);
    }
    Ok(EquivalenceReport::assemble(
        "semidiscrete_k",
        "weighted_error_sum",
        ladder,
        lhs,
        rhs,
        cfg,
    ))
}

fn tail_settled(seq: &[f64], cfg: &HarnessConfig) -> bool {
    let total: f64 = seq.iter().sum();
    match *seq {
        [.., last] if last <= cfg.noise_floor || last <= cfg.tail_tolerance * total => seq.len() > 1,
        [.., a, b, c] if a > 0.0 && b > 0.0 => {
            let (r1, r2) = (b / a, c / b);
            r2 < 0.9 && (r1 - r2).abs() <= 10.0 * cfg.tail_tolerance * r2
        }
        _ => false,
    }
}

/// `𝒦_s(f, X_σ)_p` against `Σ_k (σ2^k)^{-s} |G_{σ2^k} f|_{W_p^s}`, summed up
/// to [`HarnessConfig::sum_cap`] (or until the tail settles) and closed with a geometric tail when the
/// terms decay.
pub fn smoothness_of_operator_check(
    f: &RealFunction,
    op: &PreparedOperator,
    params: &CheckParams,
    ladder: &[f64],
    cfg: &HarnessConfig,
) -> Result<EquivalenceReport> {
    params.validate()?;
    if !op.is_nested_interpolatory() {
        return Err(Error::Precondition(alloc::format!(
            "{} is not interpolatory on nested dyadic grids",
            op.family().name()
        )));
    }
    let mut terms: BTreeMap<u64, f64> = BTreeMap::new();
    let mut lhs = Vec::with_capacity(ladder.len());
    let mut rhs = Vec::with_capacity(ladder.len());
    for &sigma in ladder {
        let mut seq = Vec::new();
        let mut level = sigma;
        while level <= cfg.sum_cap.max(sigma) * (1.0 + 1e-12) {
            let key = level.to_bits();
            let t = match terms.get(&key) {
                Some(t) => *t,
                None => {
                    let t = op.scaled_seminorm(f, level, params.s, params.p, &cfg.quad)?;
                    terms.insert(key, t);
                    t
                }
            };
            seq.push(t);
            level *= 2.0;
            if tail_settled(&seq, cfg) {
                break;
            }
        }
        let mut sum: f64 = seq.iter().sum();
        if let [.., a, b] = seq[..] {
            let rho = b / a;
            if rho < 1.0 {
                sum += b * rho / (1.0 - rho);
            }
        }
        rhs.push(sum);
        lhs.push(surrogate(f, op, sigma, params, cfg)?);
    }
    Ok(EquivalenceReport::assemble(
        "semidiscrete_k",
        "operator_smoothness_sum",
        ladder,
        lhs,
        rhs,
        cfg,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dyadic_weights_cover_every_nu() {
        for s in 1..4 {
            let total: f64 = (0..5).map(|k| dyadic_weight(k, s)).sum();
            let direct: f64 = (1..=16u64).map(|nu| ((nu + 1) as f64).powi(s as i32 - 1)).sum();
            assert!((total - direct).abs() < 1e-9, "s={s}");
        }
    }

    #[test]
    fn zero_function_is_a_vacuous_pass() {
        let z = RealFunction::zero().with_window(Interval::symmetric(1.0), DecayClass::CompactSupport);
        let cfg = HarnessConfig::default();
        let op = PreparedOperator::new(OperatorFamily::Sinc, &cfg.quad).unwrap();
        let params = CheckParams { r: 1, s: 2, p: 2.0 };
        let rep = direct_estimate_check(&z, &op, &params, &[8.0, 16.0, 32.0, 64.0], &cfg).unwrap();
        assert!(rep.noise_floor);
        assert!(rep.verdict.passed());
    }

    #[test]
    fn violation_flag() {
        let cfg = HarnessConfig::default();
        let rep = EquivalenceReport::assemble(
            "a",
            "b",
            &[1.0, 2.0, 4.0, 8.0],
            [1.0, 1.0, 1.0, 1.0].into(),
            [1.0, 0.0, 1.0, 1.0].into(),
            &cfg,
        );
        assert!(rep.violation);
        assert!(!rep.verdict.passed());
    }

    #[test]
    fn non_interpolatory_kernel_is_rejected() {
        let cfg = HarnessConfig::default();
        let op = PreparedOperator::new(OperatorFamily::Gaussian, &cfg.quad).unwrap();
        let f = crate::analysis::zoo::step();
        let params = CheckParams { r: 1, s: 2, p: 2.0 };
        assert!(matches!(
            smoothness_of_operator_check(&f, &op, &params, &[8.0, 16.0, 32.0, 64.0], &cfg),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn s_above_2r_is_rejected() {
        let cfg = HarnessConfig::default();
        let op = PreparedOperator::new(OperatorFamily::Sinc, &cfg.quad).unwrap();
        let params = CheckParams { r: 1, s: 3, p: 2.0 };
        let err = direct_estimate_check(&crate::analysis::zoo::step(), &op, &params, &[8.0; 4], &cfg).unwrap_err();
        assert!(alloc::format!("{err}").contains("s <= 2r"));
    }
}
