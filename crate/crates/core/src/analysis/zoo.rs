use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::funcspace::{DecayClass, Interval, RealFunction};
use crate::kernels::{gaussian_derivative, gaussian_eval, sinc_derivative, sinc_eval};
use crate::numeric::taylor;

/// Seed of the random band-limited member in [`zoo`].
pub const DEFAULT_ZOO_SEED: u64 = 0x5eed_0fb1;

/// Highest derivative order attached to the smooth members.
pub const SMOOTH_DERIVATIVES: usize = 8;

/// Predicted decay exponent of a smoothness measure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExpectedAlpha {
    Finite(f64),
    /// Faster than any fixed power on a bounded ladder.
    Unbounded,
}

/// Local regularity class of a zoo member.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Regularity {
    /// Isolated singularities behaving like `|x|^β` (`β = 0` is a jump,
    /// `β = 1` a kink); elsewhere smooth.
    Singular { beta: f64 },
    /// `C^∞` with all derivatives in every `L_p`.
    Smooth,
    /// Band-limited to `|ξ| <= sigma`.
    BandLimited { sigma: f64 },
}

#[derive(Debug, Clone)]
pub struct ZooFunction {
    pub name: String,
    pub f: RealFunction,
    pub regularity: Regularity,
    pub description: String,
}

impl ZooFunction {
    /// Decay exponent in `σ` of a measure of order `order` (a modulus
    /// `ω_order(f, σ⁻¹)_p`, or the error of an operator with that
    /// approximation order): `min(order, β + 1/p)` for a `|x|^β`
    /// singularity, unbounded otherwise.
    pub fn expected_alpha(&self, p: f64, order: f64) -> ExpectedAlpha {
        match self.regularity {
            Regularity::Singular { beta } => ExpectedAlpha::Finite(order.min(beta + 1.0 / p)),
            Regularity::Smooth | Regularity::BandLimited { .. } => ExpectedAlpha::Unbounded,
        }
    }

    pub fn is_smooth(&self) -> bool {
        !matches!(self.regularity, Regularity::Singular { .. })
    }
}

/// Derivatives `0..=n` of `exp(-1/(1-x²))` at `x`, exact up to rounding,
/// from truncated Taylor arithmetic.
pub fn bump_jet(x: f64, n: usize) -> Vec<f64> {
    let a0 = 1.0 - x * x;
    if !(a0 > 0.0) || -1.0 / a0 < -700.0 {
        return vec![0.0; n + 1];
    }
    let mut q = vec![0.0; n + 1];
    q[0] = a0;
    if n >= 1 {
        q[1] = -2.0 * x;
    }
    if n >= 2 {
        q[2] = -1.0;
    }
    let exponent: Vec<f64> = taylor::recip(&q).into_iter().map(|c| -c).collect();
    taylor::derivatives(&taylor::exp(&exponent))
}

pub fn bump() -> RealFunction {
    RealFunction::new("bump", Interval::symmetric(1.0), DecayClass::CompactSupport, |x| {
        bump_jet(x, 0)[0]
    })
    .with_breakpoints([-1.0, 1.0])
    .with_derivatives(SMOOTH_DERIVATIVES, |n, x| bump_jet(x, n)[n])
}

/// `(1 - |x|)₊`.
pub fn hat() -> RealFunction {
    RealFunction::new("hat", Interval::symmetric(1.0), DecayClass::CompactSupport, |x: f64| {
        1.0 - x.abs()
    })
    .with_breakpoints([-1.0, 0.0, 1.0])
}

/// `χ_{[-1,1]}`, equal to 1 at both endpoints.
pub fn step() -> RealFunction {
    RealFunction::constant(1.0, Interval::symmetric(1.0)).with_label("step")
}

/// `|x|^β · bump(x)`.
pub fn cusp(beta: f64) -> RealFunction {
    RealFunction::new(
        alloc::format!("cusp{beta}"),
        Interval::symmetric(1.0),
        DecayClass::CompactSupport,
        move |x: f64| x.abs().powf(beta) * bump_jet(x, 0)[0],
    )
    .with_breakpoints([-1.0, 0.0, 1.0])
}

/// `e^{-πx²}`, which is its own Fourier transform.
pub fn gaussian() -> RealFunction {
    RealFunction::new(
        "gaussian",
        Interval::symmetric(6.0),
        DecayClass::Exponential { rate: 12.0 * PI },
        gaussian_eval,
    )
    .with_derivatives(SMOOTH_DERIVATIVES, gaussian_derivative)
}

/// Coefficients `a * [1, 2, 1]` with `a_i` uniform on `[-1, 1]`. The double
/// zero of `[1, 2, 1]` at the alternating frequency makes the expansion
/// below decay like `|x|^{-3}`.
pub fn bandlimited_coefficients(seed: u64, len: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a: Vec<f64> = (0..len)
        .map(|_| 2.0 * ((rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64) - 1.0)
        .collect();
    let mut c = vec![0.0; len + 2];
    for (i, ai) in a.iter().enumerate() {
        c[i] += ai;
        c[i + 1] += 2.0 * ai;
        c[i + 2] += ai;
    }
    c
}

/// `Σ_j c_j sinc(ρx - j + m)` with `m` centring the shifts at the origin;
/// band-limited to `|ξ| <= ρ/2`.
pub fn sinc_combination(coeffs: Vec<f64>, rate: f64, window: Interval) -> RealFunction {
    let centre = (coeffs.len() as f64 - 1.0) / 2.0;
    let c2 = coeffs.clone();
    RealFunction::new(
        alloc::format!("sinc-combination(ρ={rate})"),
        window,
        DecayClass::Polynomial { order: 3.0 },
        move |x| {
            coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| c * sinc_eval(rate * x - j as f64 + centre))
                .sum()
        },
    )
    .with_derivatives(SMOOTH_DERIVATIVES, move |n, x| {
        let scale = rate.powi(n as i32);
        c2.iter()
            .enumerate()
            .map(|(j, c)| c * scale * sinc_derivative(n, rate * x - j as f64 + centre))
            .sum()
    })
}

pub fn bandlimited(seed: u64) -> RealFunction {
    sinc_combination(bandlimited_coefficients(seed, 6), 2.0, Interval::symmetric(16.0)).with_label("bandlimited")
}

/// The standard zoo with [`DEFAULT_ZOO_SEED`].
pub fn zoo() -> Vec<ZooFunction> {
    zoo_with_seed(DEFAULT_ZOO_SEED)
}

pub fn zoo_with_seed(seed: u64) -> Vec<ZooFunction> {
    let member = |name: &str, f: RealFunction, regularity, description: &str| ZooFunction {
        name: name.into(),
        f,
        regularity,
        description: description.into(),
    };
    vec![
        member("bump", bump(), Regularity::Smooth, "exp(-1/(1-x^2)) on (-1,1)"),
        member("hat", hat(), Regularity::Singular { beta: 1.0 }, "(1-|x|)_+"),
        member(
            "step",
            step(),
            Regularity::Singular { beta: 0.0 },
            "indicator of [-1,1]",
        ),
        member(
            "cusp0.3",
            cusp(0.3),
            Regularity::Singular { beta: 0.3 },
            "|x|^0.3 times bump",
        ),
        member(
            "cusp0.7",
            cusp(0.7),
            Regularity::Singular { beta: 0.7 },
            "|x|^0.7 times bump",
        ),
        member(
            "bandlimited",
            bandlimited(seed),
            Regularity::BandLimited { sigma: 1.0 },
            "seeded combination of sinc(2x - j), band-limited to |xi| <= 1",
        ),
        member("gaussian", gaussian(), Regularity::Smooth, "exp(-pi x^2)"),
    ]
}

/// Looks a member up by name.
pub fn zoo_member(name: &str, seed: u64) -> Option<ZooFunction> {
    zoo_with_seed(seed).into_iter().find(|z| z.name == name)
}
