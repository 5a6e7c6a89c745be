use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use sampsmooth_core::kernels::{bspline_eval, gaussian_eval, sinc_eval};
use sampsmooth_core::{Kernel, QuadratureSpec};
use std::f64::consts::PI;

fn uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * ((rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64)
}

/// Composite Simpson rule with `n` (even) intervals.
fn simpson(a: f64, b: f64, n: usize, f: impl Fn(f64) -> f64) -> f64 {
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(a + i as f64 * h);
    }
    s * h / 3.0
}

#[test]
fn bspline_partition_of_unity() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for r in 2..=4 {
        for _ in 0..100 {
            let x = uniform(&mut rng, -50.0, 50.0);
            let base = x.floor() as i64;
            let sum: f64 = (base - 4..=base + 4)
                .map(|k| bspline_eval(r, x - k as f64).unwrap())
                .sum();
            assert!((sum - 1.0).abs() < 1e-12, "r={r} x={x}: {sum}");
        }
    }
}

#[test]
fn bspline_has_unit_mass_and_support() {
    for r in 2..=5 {
        let half = r as f64 / 2.0;
        let mass = simpson(-half, half, 20_000 * r, |u| bspline_eval(r, u).unwrap());
        assert!((mass - 1.0).abs() < 1e-9, "r={r}: {mass}");
        assert_eq!(bspline_eval(r, half + 1e-9).unwrap(), 0.0);
        let k = Kernel::bspline(r).unwrap();
        assert_eq!(k.support_radius(), Some(half));
    }
    assert!(bspline_eval(1, 0.0).is_err());
}

#[test]
fn b2_is_the_hat() {
    for i in 0..=40 {
        let u = -1.5 + i as f64 * 0.075;
        let hat = (1.0 - u.abs()).max(0.0);
        assert!((bspline_eval(2, u).unwrap() - hat).abs() < 1e-15);
    }
}

#[test]
fn sinc_is_orthonormal_at_integers() {
    for j in -20i32..=20 {
        for k in -20i32..=20 {
            let v = sinc_eval((j - k) as f64);
            assert_eq!(v, if j == k { 1.0 } else { 0.0 }, "j={j} k={k}");
        }
    }
    assert!(Kernel::sinc().is_interpolatory());
}

#[test]
fn gaussian_exponent_convention() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let x = uniform(&mut rng, -3.0, 3.0);
        let y = uniform(&mut rng, -3.0, 3.0);
        let psi = gaussian_eval(x);
        assert!((psi * psi - (-2.0 * PI * x * x).exp()).abs() < 1e-15);
        // ψ(x)ψ(y) = ψ(√(x²+y²))
        let r = (x * x + y * y).sqrt();
        assert!((gaussian_eval(x) * gaussian_eval(y) - gaussian_eval(r)).abs() < 1e-15);
    }
    let k = Kernel::gaussian();
    assert_eq!(k.fourier_eval(0.7), Some(gaussian_eval(0.7)));
    let mass = simpson(-8.0, 8.0, 4000, gaussian_eval);
    assert!((mass - 1.0).abs() < 1e-12);
}

fn riesz_oracle(s: f64, delta: f64, x: f64) -> f64 {
    // independent route: Simpson on (3/2)∫_0^1 (1-u^s)^δ cos(3πux/2) du
    1.5 * simpson(0.0, 1.0, 200_000, |u| {
        (1.0 - u.powf(s)).max(0.0).powf(delta) * (1.5 * PI * u * x).cos()
    })
}

#[test]
fn riesz_matches_direct_cosine_transform() {
    let quad = QuadratureSpec::default();
    for &(s, delta) in &[(2.0, 2.0), (1.0, 3.0), (1.5, 2.5)] {
        let k = Kernel::riesz(s, delta, &quad).unwrap();
        for &x in &[0.0, 0.3, 1.0, 2.71, 7.5, 31.2] {
            let want = riesz_oracle(s, delta, x);
            assert!(
                (k.eval(x) - want).abs() < 1e-8,
                "s={s} δ={delta} x={x}: {} vs {want}",
                k.eval(x)
            );
            assert_eq!(k.eval(-x), k.eval(x));
        }
    }
}

#[test]
fn riesz_value_at_origin_closed_form() {
    // (3/2)∫_0^1 (1-u²)² du = (3/2)(8/15)
    let k = Kernel::riesz(2.0, 2.0, &QuadratureSpec::default()).unwrap();
    assert!((k.eval(0.0) - 0.8).abs() < 1e-12);
}

#[test]
fn riesz_has_unit_mass() {
    let k = Kernel::riesz(2.0, 2.0, &QuadratureSpec::default()).unwrap();
    // |ρ| <= C|x|^{-3}: the tail beyond 200 holds well under 1e-5 of the mass
    let mass = 2.0 * simpson(0.0, 200.0, 64_000, |x| k.eval(x));
    assert!((mass - 1.0).abs() < 1e-5, "{mass}");
    assert_eq!(k.fourier_eval(0.0), Some(1.0));
    assert_eq!(k.fourier_eval(0.75), Some(0.0));
}

#[test]
fn riesz_envelope_bound_is_finite() {
    let quad = QuadratureSpec::default();
    for &(s, delta) in &[(2.0, 2.0), (1.0, 3.0)] {
        let k = Kernel::riesz(s, delta, &quad).unwrap();
        let order = 1.0 + if s == 2.0 { delta } else { s.min(delta) };
        let mut c: f64 = 0.0;
        for i in 0..=80 {
            let x = 10f64.powf(-1.0 + 3.3 * i as f64 / 80.0);
            c = c.max(k.eval(x).abs() * (1.0 + x.powf(order)));
            assert!(k.eval(x).abs() <= k.envelope(x) * (1.0 + 1e-9) || x < 1.0, "x={x}");
        }
        assert!(c.is_finite() && c < 100.0, "fitted constant {c}");
    }
}

#[test]
fn truncation_radii_honour_budgets() {
    let quad = QuadratureSpec::default();
    let kernels = [
        Kernel::sinc(),
        Kernel::gaussian(),
        Kernel::bspline(3).unwrap(),
        Kernel::riesz(2.0, 2.0, &quad).unwrap(),
    ];
    for k in &kernels {
        for budget in [1e-3, 1e-6] {
            let r = k.truncation_radius(budget);
            assert!(k.envelope(r) <= budget * (1.0 + 1e-9), "{:?} {budget}", k.family());
        }
    }
}
