//! End-to-end acceptance run: one PASS/FAIL line per criterion, nonzero exit
//! when any criterion fails.

use std::time::Instant;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use sampsmooth::{run_config, ExperimentConfig};
use sampsmooth_core::analysis::zoo::{self, bandlimited_coefficients, sinc_combination};
use sampsmooth_core::analysis::{
    corollary_case, default_ladder, eq0_rows, identity_residual, k_ratios, modulus_properties, modulus_slope,
    partner_for, polynomial_reproduction, st1_rows, tau_properties, CheckKind, CorollaryCase, CorollaryId,
    HarnessConfig, PreparedOperator, PropertyConfig, ZooFunction,
};
use sampsmooth_core::funcspace::{
    discrete_seminorm, lp_norm, make_kadec_grid, make_uniform_grid, DecayClass, Interval, DEFAULT_GAMMA,
};
use sampsmooth_core::kernels::bspline_eval;
use sampsmooth_core::operators::{operator_error, GaussianInterpolant, SamplingOperator};
use sampsmooth_core::{Kernel, QuadratureSpec};

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

fn member(name: &str) -> ZooFunction {
    zoo::zoo().into_iter().find(|m| m.name == name).expect("zoo member")
}

fn step_case(id: CorollaryId) -> CorollaryCase {
    let setup = id.default_setup();
    let cfg = HarnessConfig::default();
    let op = PreparedOperator::new(setup.family, &cfg.quad).unwrap();
    corollary_case(&setup, &op, &member("step"), 2.0, &default_ladder(), &cfg).unwrap()
}

fn alphas(case: &CorollaryCase) -> Vec<f64> {
    case.properties.iter().map(|s| s.alpha().unwrap_or(f64::NAN)).collect()
}

fn fmt_alphas(a: &[f64]) -> String {
    a.iter().map(|v| format!("{v:.3}")).collect::<Vec<_>>().join("/")
}

/// α(i) = α(ii) = 1/2 ± 0.1 for the step.
fn rate_match(id: CorollaryId) -> Outcome {
    let case = step_case(id);
    let a = alphas(&case);
    let ok = a.iter().all(|v| (v - 0.5).abs() <= 0.1);
    outcome(
        ok,
        format!("{} step alpha {} (target 0.5 +- 0.1)", id.name(), fmt_alphas(&a)),
    )
}

fn c1() -> Outcome {
    let case = step_case(CorollaryId::Cor3S);
    let a = alphas(&case);
    let spread = case.reports.iter().map(|r| r.spread()).fold(1.0, f64::max);
    let ok = a.len() == 3 && a.iter().all(|v| (v - 0.5).abs() <= 0.1) && spread <= 10.0;
    outcome(
        ok,
        format!(
            "alpha (i)/(ii)/(iii) {}, max pairwise spread {spread:.3} (<= 10)",
            fmt_alphas(&a)
        ),
    )
}

fn c2() -> Outcome {
    // Σ c_j sinc(σx/2 - j + m) is band-limited to σ/4 and decays like |x|^{-3}
    // (the coefficients have a double zero at the alternating frequency), so
    // the part outside |x| <= 40 is ~1e-7 relative and the kernel tail past
    // R = 1e4 contributes at most 1/(πR) per unit sample.
    let quad = QuadratureSpec::default();
    let sigma = 8.0;
    let g = sinc_combination(bandlimited_coefficients(9, 7), sigma / 2.0, Interval::symmetric(40.0))
        .with_window(Interval::symmetric(40.0), DecayClass::Polynomial { order: 3.0 });
    let op = SamplingOperator::for_function(Kernel::sinc(), sigma, &g, 1.0 / (std::f64::consts::PI * 1e4)).unwrap();
    let err = operator_error(&op, &g, 2.0, &quad).unwrap();
    let rel = err / lp_norm(&g, 2.0, &quad).unwrap();
    outcome(
        rel <= 1e-6 && op.truncation_radius() >= 1e4,
        format!(
            "relative error {rel:.3e} at R = {:.0} (<= 1e-6)",
            op.truncation_radius()
        ),
    )
}

fn c3() -> Outcome {
    let quad = QuadratureSpec::default();
    let mut worst: f64 = 0.0;
    for seed in 0..20u64 {
        let sigma = [0.5, 1.0, 2.0, 4.0][seed as usize % 4];
        let g = sinc_combination(
            bandlimited_coefficients(seed, 5),
            sigma,
            Interval::symmetric(1200.0 / sigma),
        );
        let norm = lp_norm(&g, 2.0, &quad).unwrap();
        let grid = make_uniform_grid(sigma, g.window(), DEFAULT_GAMMA).unwrap();
        let discrete = discrete_seminorm(&g, &grid, 2.0).unwrap().value;
        worst = worst.max((norm - discrete).abs() / norm);
    }
    outcome(
        worst <= 1e-8,
        format!("max relative gap {worst:.3e} over 20 functions (<= 1e-8)"),
    )
}

fn c4() -> Outcome {
    let cfg = PropertyConfig::default();
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    let mut worst = String::new();
    for m in zoo::zoo() {
        for r in 1..=2 {
            for p in [1.0, 2.0] {
                for row in st1_rows(&m.f, r, p, &cfg.deltas, &cfg.quad, cfg.h_grid_size).unwrap() {
                    hi = hi.max(row.ratio);
                    if row.ratio < lo {
                        lo = row.ratio;
                        worst = format!("{} r={r} p={p} delta={}", m.name, row.delta);
                    }
                }
            }
        }
    }
    let c = hi.max(1.0 / lo);
    outcome(
        c <= 20.0 && hi <= 1.0,
        format!(
            "ratios in [{lo:.3e}, {hi:.3e}], C = {c:.1} (<= 20; smallest at {worst}); upper <= 1: {}",
            hi <= 1.0
        ),
    )
}

fn c5() -> Outcome {
    let cfg = PropertyConfig::default();
    let mut c: f64 = 0.0;
    for m in zoo::zoo() {
        for r in 1..=2 {
            for row in eq0_rows(&m.f, r, 2.0, &cfg.tau_deltas, &cfg.quad).unwrap() {
                c = c.max(row.ratio);
            }
        }
    }
    outcome(c <= 50.0, format!("fitted C = {c:.3} (<= 50), delta*sigma = gamma"))
}

fn c6() -> Outcome {
    let quad = QuadratureSpec::default();
    let mut res: f64 = 0.0;
    for m in zoo::zoo().into_iter().filter(|m| m.is_smooth()) {
        for r in 1..=2 {
            for delta in [0.1, 1.0 / 16.0, 1.0 / 64.0] {
                res = res.max(identity_residual(&m.f, r, delta, &quad).unwrap());
            }
        }
    }
    let poly = polynomial_reproduction(1, 0.1, &quad)
        .unwrap()
        .max(polynomial_reproduction(2, 0.1, &quad).unwrap());
    outcome(
        res <= 1e-8 && poly <= 1e-10,
        format!("identity residual {res:.3e} (<= 1e-8), polynomial reproduction {poly:.3e} (<= 1e-10)"),
    )
}

fn c7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst: f64 = 0.0;
    for r in 2..=4 {
        for _ in 0..100 {
            let x = -100.0 + 200.0 * ((rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64);
            let base = x.floor() as i64;
            let sum: f64 = (base - 4..=base + 4)
                .map(|k| bspline_eval(r, x - k as f64).unwrap())
                .sum();
            worst = worst.max((sum - 1.0).abs());
        }
    }
    let rate = rate_match(CorollaryId::Cor3Sr);
    outcome(
        worst <= 1e-12 && rate.passed,
        format!("partition of unity {worst:.3e} (<= 1e-12); {}", rate.detail),
    )
}

fn c9() -> Outcome {
    let grid = make_kadec_grid(1.0, Interval::new(-256.0, 255.5), 0.2, 7).unwrap();
    let f = zoo::step().with_window(Interval::symmetric(300.0), DecayClass::CompactSupport);
    let it = GaussianInterpolant::new(&grid, &f).unwrap();
    let nodal = grid.len() == 512 && it.residual() <= 1e-8 && it.condition_estimate().is_finite();
    let case = step_case(CorollaryId::CorHa);
    let a = alphas(&case);
    let agree = (a[0] - a[1]).abs() <= 0.1;
    outcome(
        nodal && agree,
        format!(
            "{} nodes, residual {:.3e}, condition {:.3e}; step alpha (i)/(ii) {} (agree within 0.1)",
            grid.len(),
            it.residual(),
            it.condition_estimate(),
            fmt_alphas(&a)
        ),
    )
}

fn c10() -> Outcome {
    let cfg = PropertyConfig::default();
    let members = zoo::zoo();
    let (mut total, mut failed) = (0, Vec::new());
    for (i, m) in members.iter().enumerate() {
        let partner = partner_for(&members, i).unwrap();
        let mut checks = Vec::new();
        for r in 1..=3 {
            for p in [1.0, 2.0, 3.0] {
                checks.extend(modulus_properties(m, partner, r, p, &cfg).unwrap());
            }
            checks.extend(tau_properties(m, partner, r, &[1.0, 2.0, 3.0], &cfg).unwrap());
        }
        for c in checks.iter().filter(|c| c.kind == CheckKind::Assertion) {
            total += 1;
            if !c.passed {
                failed.push(format!("{} {} {}", c.property, c.function, c.parameters));
            }
        }
    }
    outcome(
        failed.is_empty(),
        format!("{total} assertions, {} failed {:?}", failed.len(), failed),
    )
}

fn c11() -> Outcome {
    let cfg = PropertyConfig::default();
    let mut c: f64 = 0.0;
    for m in zoo::zoo() {
        for s in 1..=2 {
            for ratio in k_ratios(&m.f, s, 2.0, &default_ladder(), &cfg.quad, cfg.h_grid_size).unwrap() {
                c = c.max(ratio.max(1.0 / ratio));
            }
        }
    }
    outcome(
        c <= 20.0,
        format!("C = {c:.3} (<= 20) over zoo x ladder 8..256, s = 1, 2"),
    )
}

fn c12() -> Outcome {
    let cfg = PropertyConfig::default();
    let slope = modulus_slope(&zoo::hat(), 2, 2.0, &cfg.deltas, &cfg.quad, cfg.h_grid_size).unwrap();
    outcome((slope - 1.5).abs() <= 0.1, format!("slope {slope:.4} (1.5 +- 0.1)"))
}

fn c13() -> Outcome {
    let configs = [
        r#"{"suite": "corollary", "corollary_id": "cor3Sr", "ladder": "8:128"}"#,
        r#"{"suite": "direct", "zoo": ["step", "hat", "bandlimited"], "ladder": "8:64", "seed": 17}"#,
    ];
    let mut compared = 0;
    for text in configs {
        let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
        let runs: Vec<Vec<(String, Vec<u8>)>> = dirs
            .iter()
            .map(|d| {
                let mut cfg = ExperimentConfig::from_json(text).unwrap();
                cfg.output_dir = Some(d.path().to_path_buf());
                let report = run_config(&cfg).unwrap();
                report
                    .files
                    .iter()
                    .map(|f| {
                        (
                            f.file_name().unwrap().to_string_lossy().into_owned(),
                            std::fs::read(f).unwrap(),
                        )
                    })
                    .collect()
            })
            .collect();
        if runs[0] != runs[1] {
            return outcome(false, format!("outputs differ for {text}"));
        }
        compared += runs[0].len();
    }
    outcome(true, format!("{compared} files byte-identical across repeated runs"))
}

fn main() {
    let criteria: [Criterion; 13] = [
        ("sinc rate match, step", c1),
        ("sinc reproduces band-limited functions", c2),
        ("Plancherel-Polya equality at Nyquist", c3),
        ("averaged operator two-sided bound", c4),
        ("discrete deviation vs tau-modulus", c5),
        ("averaged operator identity", c6),
        ("B-spline partition of unity and rate match", c7),
        ("Gaussian rate match", || rate_match(CorollaryId::CorGa)),
        ("irregular sampling", c9),
        ("moduli property suite", c10),
        ("K-functional realization", c11),
        ("hat modulus slope", c12),
        ("determinism", c13),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = check();
        if !o.passed {
            failures += 1;
        }
        println!(
            "criterion {:>2} {}: {} ({}; {:.1}s)",
            i + 1,
            if o.passed { "PASS" } else { "FAIL" },
            name,
            o.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {}/13 criteria passed", 13 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
