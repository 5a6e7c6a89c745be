use proptest::prelude::*;
use sampsmooth_core::analysis::zoo::{self, zoo};
use sampsmooth_core::funcspace::{lp_norm, make_uniform_grid, DecayClass, Interval, RealFunction, DEFAULT_GAMMA};
use sampsmooth_core::smoothness::{
    averaged_deviation_function, averaged_identity_check, averaged_op, averaged_weights, ball_average,
    discrete_avg_deviation, local_modulus, modulus, modulus_with_steps, step_grid, tau_modulus, LocalGrid,
    DEFAULT_H_GRID,
};
use sampsmooth_core::QuadratureSpec;

const DELTAS: [f64; 6] = [0.0625, 0.03125, 0.015625, 0.0078125, 0.00390625, 0.001953125];

/// Log-log least-squares slope, computed independently of the crate's fit.
fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let cov: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let var: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    cov / var
}

#[test]
fn hat_second_modulus_closed_form() {
    // each kink with slope jump c turns Δ_h² into a tent of height |c|h and
    // width 2h; the jumps are 1, -2, 1, so ‖Δ_h² hat‖₂ = 2h^{3/2} and
    // ‖Δ_h² hat‖₁ = 4h² while 2h <= 1
    let quad = QuadratureSpec::default();
    let hat = zoo::hat();
    let mut l2 = Vec::new();
    for &d in &DELTAS {
        let w2 = modulus(&hat, 2, d, 2.0, &quad, DEFAULT_H_GRID).unwrap();
        let w1 = modulus(&hat, 2, d, 1.0, &quad, DEFAULT_H_GRID).unwrap();
        assert!((w2 - 2.0 * d.powf(1.5)).abs() < 1e-12 * w2, "δ={d}: {w2}");
        assert!((w1 - 4.0 * d * d).abs() < 1e-12 * w1, "δ={d}: {w1}");
        l2.push(w2);
    }
    assert!((slope(&DELTAS, &l2) - 1.5).abs() < 0.1);
}

#[test]
fn step_first_modulus_and_tau() {
    // ‖Δ_h χ‖_p^p = 2h; the local modulus is 1 on a set of measure δ per jump
    let quad = QuadratureSpec::default();
    let step = zoo::step();
    for &d in &DELTAS[..4] {
        for p in [1.0, 2.0, 3.0] {
            let w = modulus(&step, 1, d, p, &quad, DEFAULT_H_GRID).unwrap();
            assert!((w - (2.0 * d).powf(1.0 / p)).abs() < 1e-12, "δ={d} p={p}: {w}");
            let t = tau_modulus(&step, 1, d, p, &quad, &LocalGrid::default()).unwrap();
            assert!((t - (2.0 * d).powf(1.0 / p)).abs() < 1e-12, "δ={d} p={p}: τ={t}");
        }
    }
}

#[test]
fn averaged_weights_closed_form() {
    assert_eq!(averaged_weights(1), vec![1.0]);
    let w = averaged_weights(2);
    assert!((w[0] - 4.0 / 3.0).abs() < 1e-15 && (w[1] + 1.0 / 3.0).abs() < 1e-15);
    for r in 1..=6 {
        let s: f64 = averaged_weights(r).iter().sum();
        assert!((s - 1.0).abs() < 1e-12, "r={r}");
    }
}

/// Mean of `x^k` over `(x - a, x + a)`.
fn monomial_mean(k: i32, x: f64, a: f64) -> f64 {
    ((x + a).powi(k + 1) - (x - a).powi(k + 1)) / (2.0 * a * (k + 1) as f64)
}

#[test]
fn averaged_operator_reproduces_low_degree_polynomials() {
    let quad = QuadratureSpec::default();
    for r in 1..=3usize {
        for k in 0..(2 * r) as i32 {
            let f = RealFunction::new("x^k", Interval::symmetric(4.0), DecayClass::None, move |x: f64| {
                x.powi(k)
            });
            for &x in &[-0.7, 0.0, 0.45, 1.3] {
                let delta = 0.3;
                let v = averaged_op(&f, delta, r, x, &quad).unwrap();
                assert!((v - x.powi(k)).abs() < 1e-12, "r={r} k={k} x={x}: {v}");
            }
        }
        // degree 2r is not reproduced
        let k = 2 * r as i32;
        let f = RealFunction::new("x^2r", Interval::symmetric(4.0), DecayClass::None, move |x: f64| {
            x.powi(k)
        });
        let v = averaged_op(&f, 0.3, r, 0.2, &quad).unwrap();
        assert!((v - 0.2f64.powi(k)).abs() > 1e-6);
    }
    // the ball means themselves match the closed form
    let cube = RealFunction::new("x^3", Interval::symmetric(4.0), DecayClass::None, |x: f64| x.powi(3));
    assert!((ball_average(&cube, 0.25, 0.6, &quad) - monomial_mean(3, 0.6, 0.25)).abs() < 1e-14);
}

#[test]
fn averaged_identity_on_smooth_members() {
    let quad = QuadratureSpec::default();
    for member in zoo().into_iter().filter(|m| m.is_smooth()) {
        for r in 1..=2 {
            for delta in [1.0 / 16.0, 1.0 / 64.0] {
                for &x in &[-0.83, -0.31, 0.0, 0.12, 0.58] {
                    let res = averaged_identity_check(&member.f, delta, r, x, &quad).unwrap();
                    assert!(res <= 1e-8, "{} r={r} δ={delta} x={x}: {res}", member.name);
                }
            }
        }
    }
}

#[test]
fn averaged_deviation_minkowski_bound() {
    // f_{δ,r} - f = (1/2c_r) ∫ Δ̃^{2r} dy gives ‖f_{δ,r} - f‖_p <= ω_{2r}(f, δ)_p
    let quad = QuadratureSpec::default();
    for member in zoo().into_iter().filter(|m| m.f.is_compact()) {
        for r in 1..=2 {
            for p in [1.0, 2.0] {
                for &d in &DELTAS[..3] {
                    let dev = lp_norm(&averaged_deviation_function(&member.f, d, r, &quad).unwrap(), p, &quad).unwrap();
                    let w = modulus(&member.f, 2 * r, d, p, &quad, DEFAULT_H_GRID).unwrap();
                    assert!(dev <= w, "{} r={r} p={p} δ={d}: {dev} > {w}", member.name);
                }
            }
        }
    }
}

#[test]
fn zero_scale_requests_vanish() {
    let quad = QuadratureSpec::default();
    let f = zoo::step();
    let grid = make_uniform_grid(8.0, f.window(), DEFAULT_GAMMA).unwrap();
    assert_eq!(discrete_avg_deviation(&f, &grid, 0.0, 2, 2.0, &quad).unwrap(), 0.0);
    assert_eq!(modulus(&f, 2, 0.0, 2.0, &quad, DEFAULT_H_GRID).unwrap(), 0.0);
    assert_eq!(tau_modulus(&f, 2, 0.0, 2.0, &quad, &LocalGrid::default()).unwrap(), 0.0);
    assert_eq!(averaged_identity_check(&f, 0.0, 1, 0.3, &quad).unwrap(), 0.0);
    assert!(discrete_avg_deviation(&f, &grid, 0.2, 1, 2.0, &quad).is_err());
}

#[test]
fn local_modulus_sees_the_jump_only_nearby() {
    let step = zoo::step();
    let g = LocalGrid::default();
    assert_eq!(local_modulus(&step, 1, 0.1, 1.02, &g), 1.0);
    assert_eq!(local_modulus(&step, 1, 0.1, 1.2, &g), 0.0);
    assert_eq!(local_modulus(&step, 1, 0.1, 0.0, &g), 0.0);
}

fn polygon(values: Vec<f64>) -> RealFunction {
    let n = values.len() - 1;
    let h = 2.0 / n as f64;
    let knots: Vec<f64> = (0..=n).map(|i| -1.0 + i as f64 * h).collect();
    RealFunction::new(
        "polygon",
        Interval::symmetric(1.0),
        DecayClass::CompactSupport,
        move |x: f64| {
            if !(-1.0..=1.0).contains(&x) {
                return 0.0;
            }
            let t = ((x + 1.0) / h).min(n as f64 - 1e-12);
            let i = t.floor() as usize;
            let w = t - i as f64;
            (1.0 - w) * values[i] + w * values[i + 1]
        },
    )
    .with_breakpoints(knots)
}

fn values() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-2.0f64..2.0, 4..9)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn modulus_is_subadditive(v in values(), w in values(), r in 1usize..4, p in prop::sample::select(vec![1.0, 2.0, 3.0]),
                              delta in 0.01f64..0.3) {
        let quad = QuadratureSpec::default();
        let (f, g) = (polygon(v), polygon(w));
        let steps = step_grid(delta, 16);
        let lhs = modulus_with_steps(&f.add(&g), r, &steps, p, &quad).unwrap();
        let rhs = modulus_with_steps(&f, r, &steps, p, &quad).unwrap() + modulus_with_steps(&g, r, &steps, p, &quad).unwrap();
        prop_assert!(lhs <= rhs * (1.0 + 1e-12) + 1e-15);
    }

    #[test]
    fn raising_the_order_at_most_doubles(v in values(), r in 1usize..4, p in prop::sample::select(vec![1.0, 2.0, 3.0]),
                                         delta in 0.01f64..0.3) {
        let quad = QuadratureSpec::default();
        let f = polygon(v);
        let steps = step_grid(delta, 16);
        let next = modulus_with_steps(&f, r + 1, &steps, p, &quad).unwrap();
        let this = modulus_with_steps(&f, r, &steps, p, &quad).unwrap();
        prop_assert!(next <= 2.0 * this * (1.0 + 1e-12) + 1e-15);
    }

    #[test]
    fn modulus_is_nondecreasing(v in values(), r in 1usize..4, delta in 0.01f64..0.3) {
        let quad = QuadratureSpec::default();
        let f = polygon(v);
        let small = modulus_with_steps(&f, r, &step_grid(delta, 16), 2.0, &quad).unwrap();
        let mut larger = step_grid(delta, 16);
        larger.push(1.5 * delta);
        let big = modulus_with_steps(&f, r, &larger, 2.0, &quad).unwrap();
        prop_assert!(small <= big);
    }
}

#[test]
fn tau_dominates_the_modulus() {
    // the local sup over (t, h) covers every shift the global modulus uses
    let quad = QuadratureSpec::default();
    for member in zoo().into_iter().filter(|m| m.f.is_compact()) {
        for r in [1, 2] {
            for &d in &DELTAS[..2] {
                let w = modulus(&member.f, r, d, 2.0, &quad, DEFAULT_H_GRID).unwrap();
                let t = tau_modulus(&member.f, r, d, 2.0, &quad, &LocalGrid::default()).unwrap();
                assert!(t >= w * (1.0 - 1e-6), "{} r={r} δ={d}: τ={t} ω={w}", member.name);
            }
        }
    }
}
