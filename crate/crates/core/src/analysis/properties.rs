use alloc::string::String;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use super::checks::{OperatorFamily, PreparedOperator};
use super::rate::rate_fit;
use super::zoo::{Regularity, ZooFunction};
use crate::error::{Error, Result};
use crate::funcspace::{lp_norm, make_uniform_grid, DecayClass, Interval, RealFunction, DEFAULT_GAMMA};
use crate::operators::sobolev_seminorm;
use crate::quadrature::QuadratureSpec;
use crate::smoothness::{
    averaged_deviation_function, averaged_identity_check, averaged_op, discrete_avg_deviation, k_realization, modulus,
    tau_modulus, LocalGrid, ModulusProfile, TauProbe, STEPS_PER_OCTAVE,
};

/// Whether a check asserts an inequality or only reports a constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    /// `value <= bound` must hold.
    Assertion,
    /// `value` is an empirical constant; only finiteness is required.
    Report,
}

/// One evaluated property.
#[derive(Debug, Clone, PartialEq)]
pub struct PropertyCheck {
    pub property: String,
    pub function: String,
    pub parameters: String,
    pub value: f64,
    pub bound: f64,
    pub kind: CheckKind,
    pub passed: bool,
}

impl PropertyCheck {
    pub fn assert_le(property: &str, function: &str, parameters: String, value: f64, bound: f64) -> Self {
        PropertyCheck {
            property: property.into(),
            function: function.into(),
            parameters,
            value,
            bound,
            kind: CheckKind::Assertion,
            passed: value <= bound,
        }
    }

    pub fn report(property: &str, function: &str, parameters: String, value: f64) -> Self {
        PropertyCheck {
            property: property.into(),
            function: function.into(),
            parameters,
            value,
            bound: f64::INFINITY,
            kind: CheckKind::Report,
            passed: value.is_finite() && value >= 0.0,
        }
    }
}

/// Scales and tolerances of the property checks.
#[derive(Debug, Clone, PartialEq)]
pub struct PropertyConfig {
    pub quad: QuadratureSpec,
    /// Coarser rule for the τ probes; comparisons are node-matched, so its
    /// accuracy does not enter the verdicts.
    pub tau_quad: QuadratureSpec,
    /// Scales for the modulus properties.
    pub deltas: Vec<f64>,
    /// Scales for the τ properties.
    pub tau_deltas: Vec<f64>,
    /// Relative slack for inequalities that are exact up to rounding and
    /// the translation error of the quadrature.
    pub slack: f64,
    pub h_grid_size: usize,
}

impl Default for PropertyConfig {
    fn default() -> Self {
        PropertyConfig {
            quad: QuadratureSpec::default(),
            tau_quad: QuadratureSpec {
                panels: 16,
                nodes_per_panel: 4,
                tail_tolerance: 1e-4,
            },
            deltas: (4..=9).map(|j| (-(j as f64)).exp2()).collect(),
            tau_deltas: (4..=6).map(|j| (-(j as f64)).exp2()).collect(),
            slack: 1e-9,
            h_grid_size: crate::smoothness::DEFAULT_H_GRID,
        }
    }
}

fn params(r: usize, p: f64) -> String {
    alloc::format!("r={r} p={p}")
}

/// `f` and `g` re-windowed to their common hull with a shared breakpoint
/// set, so that norms of `f`, `g` and `f + g` use identical nodes.
/// Functions without compact support are integrated over the hull only.
pub fn matched_pair(f: &RealFunction, g: &RealFunction) -> (RealFunction, RealFunction) {
    let hull = f.window().hull(&g.window());
    let rewindow = |h: &RealFunction, other: &RealFunction| {
        let decay = if h.is_compact() {
            DecayClass::CompactSupport
        } else {
            DecayClass::None
        };
        h.clone()
            .with_window(hull, decay)
            .with_breakpoints(other.breakpoints().iter().copied())
    };
    (rewindow(f, g), rewindow(g, f))
}

/// Properties (a)–(e) of `ω_r` on the absolute step grid `2^{-j/8}`.
pub fn modulus_properties(
    f: &ZooFunction,
    partner: &ZooFunction,
    r: usize,
    p: f64,
    cfg: &PropertyConfig,
) -> Result<Vec<PropertyCheck>> {
    let (fm, gm) = matched_pair(&f.f, &partner.f);
    let sum = fm.add(&gm);
    let mut deltas = cfg.deltas.clone();
    deltas.sort_by(f64::total_cmp);
    let (d_min, d_max) = (deltas[0], deltas[deltas.len() - 1]);
    let profile = |h: &RealFunction, order: usize| {
        ModulusProfile::compute(h, order, p, &cfg.quad, 0.5 * d_min, 2.0 * d_max, STEPS_PER_OCTAVE)
    };
    let pf = profile(&fm, r)?;
    let pf_next = profile(&fm, r + 1)?;
    let pg = profile(&gm, r)?;
    let psum = profile(&sum, r)?;
    let name = f.name.as_str();
    let tag = params(r, p);
    let rel = 1.0 + cfg.slack;
    let mut out = Vec::new();

    let omegas: Vec<f64> = deltas.iter().map(|&d| pf.omega(d)).collect();
    let monotone = omegas.windows(2).map(|w| w[0] - w[1]).fold(f64::NEG_INFINITY, f64::max);
    out.push(PropertyCheck::assert_le(
        "(a) nondecreasing",
        name,
        tag.clone(),
        monotone,
        0.0,
    ));
    out.push(PropertyCheck::assert_le(
        "(a) vanishing",
        name,
        tag.clone(),
        omegas[0],
        omegas[omegas.len() - 1] * (1.0 - 1e-6),
    ));

    let worst = |pairs: &mut dyn Iterator<Item = (f64, f64)>| {
        // largest value/bound ratio, so that the verdict is `<= 1`
        pairs
            .map(|(v, b)| {
                if b > 0.0 {
                    v / b
                } else if v > 0.0 {
                    f64::INFINITY
                } else {
                    0.0
                }
            })
            .fold(0.0, f64::max)
    };
    let b = worst(
        &mut deltas
            .iter()
            .map(|&d| (psum.omega(d), (pf.omega(d) + pg.omega(d)) * (1.0 + 1e-12))),
    );
    out.push(PropertyCheck::assert_le(
        "(b) subadditive",
        name,
        alloc::format!("{tag} g={}", partner.name),
        b,
        1.0,
    ));
    let c = worst(&mut deltas.iter().map(|&d| (pf_next.omega(d), 2.0 * pf.omega(d) * rel)));
    out.push(PropertyCheck::assert_le("(c) order step", name, tag.clone(), c, 1.0));
    let lambda = 3f64.powi(r as i32);
    let d = worst(&mut deltas.iter().map(|&d| (pf.omega(2.0 * d), lambda * pf.omega(d) * rel)));
    out.push(PropertyCheck::assert_le("(d) lambda=2", name, tag.clone(), d, 1.0));

    if f.f.max_derivative().is_some_and(|m| m >= r) {
        // differences over the window reach `r·2δ_max` beyond it
        let reach = if fm.is_compact() {
            fm.clone()
        } else {
            fm.clone()
                .with_window(fm.window().expand(2.0 * r as f64 * d_max), DecayClass::None)
        };
        let semi = sobolev_seminorm(&reach, r, p, &cfg.quad)?;
        let e = worst(
            &mut deltas
                .iter()
                .map(|&d| (pf.omega(d), d.powi(r as i32) * semi * (1.0 + 1e-6))),
        );
        out.push(PropertyCheck::assert_le("(e) Sobolev bound", name, tag, e, 1.0));
    }
    Ok(out)
}

/// Properties (a′)–(d′) of `τ_r` on node-matched lattice probes, for every
/// `p` in `ps`. Property (d′) is compared with the reference constant
/// `(2λ)^{r+1}` at `λ = 2`.
pub fn tau_properties(
    f: &ZooFunction,
    partner: &ZooFunction,
    r: usize,
    ps: &[f64],
    cfg: &PropertyConfig,
) -> Result<Vec<PropertyCheck>> {
    let (fm, gm) = matched_pair(&f.f, &partner.f);
    let sum = fm.add(&gm);
    let mut deltas = cfg.tau_deltas.clone();
    deltas.sort_by(f64::total_cmp);
    let (d_min, d_max) = (deltas[0], deltas[deltas.len() - 1]);
    let reach = r as f64 * d_max * 2.0;
    let eta = d_min / 8.0;
    let mut multiples = Vec::new();
    let mut m = 1usize;
    while m as f64 * eta <= 2.0 * d_max * (1.0 + 1e-12) {
        multiples.push(m);
        m *= 2;
    }
    let window = fm.window().expand(reach);
    let probe = TauProbe::new(window, fm.breakpoints(), &cfg.tau_quad, eta, multiples)?;

    let name = f.name.as_str();
    let mut out = Vec::new();
    // local values are shared by every p
    let base: Vec<Vec<f64>> = deltas.iter().map(|&d| probe.local_values(&fm, r, d)).collect();
    let doubled: Vec<Vec<f64>> = deltas.iter().map(|&d| probe.local_values(&fm, r, 2.0 * d)).collect();
    let partner_vals: Vec<Vec<f64>> = deltas.iter().map(|&d| probe.local_values(&gm, r, d)).collect();
    let sum_vals: Vec<Vec<f64>> = deltas.iter().map(|&d| probe.local_values(&sum, r, d)).collect();
    let next_vals: Vec<Vec<f64>> = deltas.iter().map(|&d| probe.local_values(&fm, r + 1, d)).collect();
    let widened: Vec<Vec<f64>> = deltas
        .iter()
        .map(|&d| probe.local_values(&fm, r, (r + 1) as f64 * d / r as f64))
        .collect();
    let tight = 1.0 + 1e-12;
    for &p in ps {
        let tag = params(r, p);
        let tau = |v: &[f64]| probe.norm(v, p);
        let taus: Vec<f64> = base.iter().map(|v| tau(v)).collect();
        let mono = taus
            .windows(2)
            .map(|w| w[0] - w[1] * tight)
            .fold(f64::NEG_INFINITY, f64::max);
        out.push(PropertyCheck::assert_le(
            "(a') nondecreasing",
            name,
            tag.clone(),
            mono,
            0.0,
        ));
        let ratio = |v: f64, b: f64| {
            if b > 0.0 {
                v / b
            } else if v > 0.0 {
                f64::INFINITY
            } else {
                0.0
            }
        };
        let b = (0..deltas.len())
            .map(|i| ratio(tau(&sum_vals[i]), (taus[i] + tau(&partner_vals[i])) * tight))
            .fold(0.0, f64::max);
        out.push(PropertyCheck::assert_le(
            "(b') subadditive",
            name,
            alloc::format!("{tag} g={}", partner.name),
            b,
            1.0,
        ));
        let c = (0..deltas.len())
            .map(|i| ratio(tau(&next_vals[i]), 2.0 * tau(&widened[i]) * tight))
            .fold(0.0, f64::max);
        out.push(PropertyCheck::assert_le("(c') order step", name, tag.clone(), c, 1.0));
        let reference = 4f64.powi(r as i32 + 1);
        let d = (0..deltas.len())
            .map(|i| ratio(tau(&doubled[i]), taus[i]))
            .fold(0.0, f64::max);
        out.push(PropertyCheck::assert_le("(d') lambda=2", name, tag, d, reference));
    }
    Ok(out)
}

/// One row of the `(st1)` comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct St1Row {
    pub delta: f64,
    pub deviation: f64,
    pub omega: f64,
    pub ratio: f64,
}

/// `‖f_{δ,r} - f‖_p` against `ω_{2r}(f, δ)_p` on each `δ`.
pub fn st1_rows(
    f: &RealFunction,
    r: usize,
    p: f64,
    deltas: &[f64],
    quad: &QuadratureSpec,
    h_grid_size: usize,
) -> Result<Vec<St1Row>> {
    deltas
        .iter()
        .map(|&delta| {
            let deviation = lp_norm(&averaged_deviation_function(f, delta, r, quad)?, p, quad)?;
            let omega = modulus(f, 2 * r, delta, p, quad, h_grid_size)?;
            Ok(St1Row {
                delta,
                deviation,
                omega,
                ratio: deviation / omega,
            })
        })
        .collect()
}

/// Upper half with `C₁ = 1`, and the spread of the two-sided ratio as a
/// reported constant `max(max ratio, 1/min ratio)`.
pub fn st1_checks(f: &ZooFunction, r: usize, p: f64, cfg: &PropertyConfig) -> Result<Vec<PropertyCheck>> {
    let rows = st1_rows(&f.f, r, p, &cfg.deltas, &cfg.quad, cfg.h_grid_size)?;
    let upper = rows.iter().map(|row| row.ratio).fold(0.0, f64::max);
    let lower = rows.iter().map(|row| row.ratio).fold(f64::INFINITY, f64::min);
    Ok(alloc::vec![
        PropertyCheck::assert_le("(st1) upper", &f.name, params(r, p), upper, 1.0),
        PropertyCheck::report("(st1) constant", &f.name, params(r, p), upper.max(1.0 / lower)),
    ])
}

/// One `(δ, σ)` evaluation of the discrete-versus-τ bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eq0Row {
    pub delta: f64,
    pub sigma: f64,
    pub discrete: f64,
    pub tau: f64,
    /// `discrete / ((δσ)^{-1/p} τ_{2r}(f, δ)_p)`.
    pub ratio: f64,
}

/// `‖f_{δ,r} - f‖_{ℓ_p(X_σ)}` against `(δσ)^{-1/p} τ_{2r}(f, δ)_p` at
/// `σ = γ/δ` (the largest `σ` the bound allows).
pub fn eq0_rows(f: &RealFunction, r: usize, p: f64, deltas: &[f64], quad: &QuadratureSpec) -> Result<Vec<Eq0Row>> {
    deltas
        .iter()
        .map(|&delta| {
            let sigma = DEFAULT_GAMMA / delta;
            let w = f.window();
            let window = if f.is_compact() { w.expand(1.0 / sigma) } else { w };
            let grid = make_uniform_grid(sigma, window, DEFAULT_GAMMA)?;
            let discrete = discrete_avg_deviation(f, &grid, delta, r, p, quad)?;
            let tau = tau_modulus(f, 2 * r, delta, p, quad, &LocalGrid::default())?;
            let scale = (delta * sigma).powf(-1.0 / p) * tau;
            let ratio = if scale > 0.0 {
                discrete / scale
            } else if discrete > 0.0 {
                f64::INFINITY
            } else {
                0.0
            };
            Ok(Eq0Row {
                delta,
                sigma,
                discrete,
                tau,
                ratio,
            })
        })
        .collect()
}

/// Octaves below `δ` covered by the scale integral of [`tauint_ratios`].
pub const TAUINT_OCTAVES: usize = 10;

/// `‖f_{δ,r} - f‖_{ℓ_p(X_σ)}` at `σ = γ/δ` against
/// `σ^{-1/p} ∫_0^δ ω_{2r}(f,t)_p t^{-1/p} dt/t`.
///
/// The integral is a Riemann sum in `log t` on the modulus step grid,
/// cut off [`TAUINT_OCTAVES`] octaves below `δ`, so the ratios are
/// approximate and only ever reported.
pub fn tauint_ratios(f: &RealFunction, r: usize, p: f64, deltas: &[f64], quad: &QuadratureSpec) -> Result<Vec<f64>> {
    let d_min = deltas.iter().copied().fold(f64::INFINITY, f64::min);
    let d_max = deltas.iter().copied().fold(0.0, f64::max);
    let lowest = d_min * (-(TAUINT_OCTAVES as f64)).exp2();
    let profile = ModulusProfile::compute(f, 2 * r, p, quad, lowest, d_max, STEPS_PER_OCTAVE)?;
    let q = STEPS_PER_OCTAVE as f64;
    let weight = core::f64::consts::LN_2 / q;
    let rows = eq0_rows(f, r, p, deltas, quad)?;
    Ok(rows
        .iter()
        .map(|row| {
            let top = (-q * row.delta.log2()).ceil() as i64;
            let integral: f64 = (top..top + (TAUINT_OCTAVES * STEPS_PER_OCTAVE) as i64)
                .map(|j| {
                    let t = (-(j as f64) / q).exp2();
                    profile.omega(t) * t.powf(-1.0 / p) * weight
                })
                .sum();
            let bound = row.sigma.powf(-1.0 / p) * integral;
            if bound > 0.0 {
                row.discrete / bound
            } else if row.discrete > 0.0 {
                f64::INFINITY
            } else {
                0.0
            }
        })
        .collect())
}

/// Largest residual of the averaged-operator identity over a few points.
pub fn identity_residual(f: &RealFunction, r: usize, delta: f64, quad: &QuadratureSpec) -> Result<f64> {
    let w = f.window();
    let mut worst: f64 = 0.0;
    for i in 0..7 {
        let x = w.lo + w.width() * (i as f64 + 0.5) / 7.0;
        worst = worst.max(averaged_identity_check(f, delta, r, x, quad)?);
    }
    Ok(worst)
}

/// `max |f_{δ,r}(x) - f(x)|` for the monomials `x^k`, `k < 2r`, at a few
/// points of `[-1, 1]`.
pub fn polynomial_reproduction(r: usize, delta: f64, quad: &QuadratureSpec) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for k in 0..2 * r {
        let mono = RealFunction::new(
            alloc::format!("x^{k}"),
            Interval::symmetric(2.0),
            DecayClass::None,
            move |x: f64| x.powi(k as i32),
        );
        for i in 0..5 {
            let x = -1.0 + 0.5 * i as f64;
            worst = worst.max((averaged_op(&mono, delta, r, x, quad)? - mono.eval(x)).abs());
        }
    }
    Ok(worst)
}

/// `k_realization(f, s, p, σ) / ω_s(f, σ⁻¹)_p` along the ladder.
pub fn k_ratios(
    f: &RealFunction,
    s: usize,
    p: f64,
    ladder: &[f64],
    quad: &QuadratureSpec,
    h_grid_size: usize,
) -> Result<Vec<f64>> {
    ladder
        .iter()
        .map(|&sigma| {
            let k = k_realization(f, s, p, sigma, quad)?.value;
            let w = modulus(f, s, 1.0 / sigma, p, quad, h_grid_size)?;
            Ok(k / w)
        })
        .collect()
}

/// Fitted exponent of `δ ↦ ω_r(f, δ)_p` over `deltas`.
pub fn modulus_slope(
    f: &RealFunction,
    r: usize,
    p: f64,
    deltas: &[f64],
    quad: &QuadratureSpec,
    h_grid_size: usize,
) -> Result<f64> {
    let mut pairs: Vec<(f64, f64)> = deltas
        .iter()
        .map(|&d| Ok((1.0 / d, modulus(f, r, d, p, quad, h_grid_size)?)))
        .collect::<Result<_>>()?;
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (sig, vals): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
    Ok(rate_fit("modulus", &sig, &vals)?.fitted_alpha)
}

/// Convergence classification along a ladder: decaying when the fitted
/// exponent is positive beyond `tolerance` or the values reach the floor.
fn decays(ladder: &[f64], values: &[f64], tolerance: f64, floor: f64) -> bool {
    if values.last().is_some_and(|v| *v <= floor) {
        return true;
    }
    rate_fit("", ladder, values).is_ok_and(|t| t.fitted_alpha > tolerance)
}

/// The convergence criterion and the exact-order statement for one member
/// with the sinc operator: `‖f - S_σ f‖_p → 0` iff the discrete term does,
/// and, for members passing the `ω_s <= K ω_{s+1}` pre-check whose modulus
/// term decays at least 0.3 faster than the discrete term, the error decays
/// at the discrete term's rate.
pub fn convergence_checks(
    f: &ZooFunction,
    r: usize,
    s: usize,
    p: f64,
    ladder: &[f64],
    cfg: &PropertyConfig,
) -> Result<Vec<PropertyCheck>> {
    let op = PreparedOperator::new(OperatorFamily::Sinc, &cfg.quad)?;
    // truncation noise of the sinc sums sits far below this
    let floor = 1e-6 * lp_norm(&f.f, p, &cfg.quad)?;
    let mut err = Vec::new();
    let mut disc = Vec::new();
    let mut om = Vec::new();
    let mut om_next = Vec::new();
    for &sigma in ladder {
        err.push(op.error(&f.f, sigma, p, &cfg.quad)?);
        let grid = op.grid(&f.f, sigma)?;
        disc.push(discrete_avg_deviation(
            &f.f,
            &grid,
            grid.gamma() / sigma,
            r,
            p,
            &cfg.quad,
        )?);
        om.push(modulus(&f.f, s, 1.0 / sigma, p, &cfg.quad, cfg.h_grid_size)?);
        om_next.push(modulus(&f.f, s + 1, 1.0 / sigma, p, &cfg.quad, cfg.h_grid_size)?);
    }
    let tag = alloc::format!("r={r} s={s} p={p}");
    let same = decays(ladder, &err, 0.05, floor) == decays(ladder, &disc, 0.05, floor);
    let mut out = alloc::vec![PropertyCheck::assert_le(
        "convergence criterion",
        &f.name,
        tag.clone(),
        if same { 0.0 } else { 1.0 },
        0.0
    )];
    let k = om
        .iter()
        .zip(&om_next)
        .map(|(a, b)| if *b > 0.0 { a / b } else { f64::INFINITY })
        .fold(0.0, f64::max);
    let fits = (
        rate_fit("", ladder, &err).ok(),
        rate_fit("", ladder, &disc).ok(),
        rate_fit("", ladder, &om).ok(),
    );
    if let (true, (Some(e), Some(d), Some(w))) = (k <= 50.0, fits) {
        if w.fitted_alpha >= d.fitted_alpha + 0.3 {
            out.push(PropertyCheck::assert_le(
                "exact order",
                &f.name,
                tag,
                (e.fitted_alpha - d.fitted_alpha).abs(),
                0.1,
            ));
            return Ok(out);
        }
    }
    out.push(PropertyCheck::report(
        "exact order premise (omega_s/omega_s+1)",
        &f.name,
        tag,
        k.min(f64::MAX),
    ));
    Ok(out)
}

/// Every property check for one member; `partner` supplies the second
/// function of the subadditivity checks.
pub fn member_properties(f: &ZooFunction, partner: &ZooFunction, cfg: &PropertyConfig) -> Result<Vec<PropertyCheck>> {
    let mut out = Vec::new();
    for r in 1..=3 {
        for &p in &[1.0, 2.0, 3.0] {
            out.extend(modulus_properties(f, partner, r, p, cfg)?);
        }
        out.extend(tau_properties(f, partner, r, &[1.0, 2.0, 3.0], cfg)?);
    }
    for r in 1..=2 {
        for &p in &[1.0, 2.0] {
            out.extend(st1_checks(f, r, p, cfg)?);
        }
    }
    let eq0 = eq0_rows(&f.f, 1, 2.0, &cfg.tau_deltas, &cfg.quad)?;
    let c = eq0.iter().map(|row| row.ratio).fold(0.0, f64::max);
    out.push(PropertyCheck::report("(EQ0) constant", &f.name, params(1, 2.0), c));
    if !matches!(f.regularity, Regularity::Singular { beta } if beta == 0.0) {
        let ratios = tauint_ratios(&f.f, 1, 2.0, &cfg.tau_deltas, &cfg.quad)?;
        let c = ratios.iter().copied().fold(0.0, f64::max);
        out.push(PropertyCheck::report("(tauint) constant", &f.name, params(1, 2.0), c));
    }
    if f.is_smooth() {
        let res = identity_residual(&f.f, 1, 0.1, &cfg.quad)?.max(identity_residual(&f.f, 2, 0.1, &cfg.quad)?);
        out.push(PropertyCheck::assert_le(
            "averaged identity",
            &f.name,
            "r=1,2 delta=0.1".into(),
            res,
            1e-8,
        ));
    }
    let ladder = [8.0, 16.0, 32.0, 64.0];
    for s in 1..=2 {
        let ratios = k_ratios(&f.f, s, 2.0, &ladder, &cfg.quad, cfg.h_grid_size)?;
        let c = ratios.iter().map(|r| r.max(1.0 / r)).fold(0.0, f64::max);
        out.push(PropertyCheck::report(
            "K-functional constant",
            &f.name,
            alloc::format!("s={s} p=2"),
            c,
        ));
    }
    out.extend(convergence_checks(f, 1, 2, 2.0, &[8.0, 16.0, 32.0, 64.0, 128.0], cfg)?);
    Ok(out)
}

/// Checks that do not belong to a single member.
pub fn global_properties(cfg: &PropertyConfig) -> Result<Vec<PropertyCheck>> {
    let mut out = Vec::new();
    for r in 1..=2 {
        let v = polynomial_reproduction(r, 0.1, &cfg.quad)?;
        out.push(PropertyCheck::assert_le(
            "polynomial reproduction",
            "x^k, k<2r",
            alloc::format!("r={r}"),
            v,
            1e-10,
        ));
    }
    let hat = super::zoo::hat();
    let slope = modulus_slope(&hat, 2, 2.0, &cfg.deltas, &cfg.quad, cfg.h_grid_size)?;
    out.push(PropertyCheck::assert_le(
        "hat omega_2 slope",
        "hat",
        "p=2".into(),
        (slope - 1.5).abs(),
        0.1,
    ));
    Ok(out)
}

/// The whole property suite, sequentially. Each member is paired with the
/// next one of the same support type.
pub fn property_suite(members: &[ZooFunction], cfg: &PropertyConfig) -> Result<Vec<PropertyCheck>> {
    let mut out = global_properties(cfg)?;
    for (i, f) in members.iter().enumerate() {
        out.extend(member_properties(f, partner_for(members, i)?, cfg)?);
    }
    Ok(out)
}

/// The next member (cyclically) sharing `members[i]`'s support type, or the
/// member itself.
pub fn partner_for(members: &[ZooFunction], i: usize) -> Result<&ZooFunction> {
    let n = members.len();
    if i >= n {
        return Err(Error::invalid("member", "index out of range"));
    }
    let compact = members[i].f.is_compact();
    Ok((1..n)
        .map(|k| &members[(i + k) % n])
        .find(|m| m.f.is_compact() == compact)
        .unwrap_or(&members[i]))
}
