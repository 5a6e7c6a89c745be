use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use sampsmooth_core::analysis::{
    default_ladder, direct_estimate_check, dyadic_ladder, dyadic_weight, rate_fit, zoo, CheckParams, CorollaryId,
    EquivalenceReport, ExpectedAlpha, HarnessConfig, OperatorFamily, PreparedOperator, Verdict,
};
use sampsmooth_core::funcspace::{Interval, RealFunction};
use sampsmooth_core::QuadratureSpec;

#[test]
fn ladder_is_dyadic() {
    assert_eq!(default_ladder(), vec![8.0, 16.0, 32.0, 64.0, 128.0, 256.0]);
    assert_eq!(dyadic_ladder(1.0, 7.9), vec![1.0, 2.0, 4.0]);
}

#[test]
fn exact_power_law_is_recovered() {
    let sigmas = default_ladder();
    for alpha in [0.0, 0.5, 1.3, 2.0] {
        let values: Vec<f64> = sigmas.iter().map(|s| 3.7 * s.powf(-alpha)).collect();
        let t = rate_fit("exact", &sigmas, &values).unwrap();
        assert!((t.fitted_alpha - alpha).abs() < 1e-12, "α={alpha}: {}", t.fitted_alpha);
        assert!(t.fit_residual < 1e-12);
        assert!((t.fitted(20.0) - 3.7 * 20f64.powf(-alpha)).abs() < 1e-12);
    }
}

#[test]
fn noisy_power_law_stays_close() {
    let sigmas = default_ladder();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..50 {
        // multiplicative noise within ±2%
        let values: Vec<f64> = sigmas
            .iter()
            .map(|s| {
                let u = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
                s.powf(-0.5) * (1.0 + 0.04 * (u - 0.5))
            })
            .collect();
        let t = rate_fit("noisy", &sigmas, &values).unwrap();
        assert!((t.fitted_alpha - 0.5).abs() < 0.02, "{}", t.fitted_alpha);
    }
}

#[test]
fn degenerate_fits_are_rejected() {
    let sigmas = default_ladder();
    let mut values = vec![1.0; sigmas.len()];
    values[3] = 0.0;
    assert!(rate_fit("zero", &sigmas, &values).is_err());
    assert!(rate_fit("short", &sigmas[..3], &[1.0, 1.0, 1.0]).is_err());
    assert!(rate_fit("unsorted", &[8.0, 4.0, 16.0, 32.0], &[1.0; 4]).is_err());
    assert!(rate_fit("mismatch", &sigmas, &[1.0; 2]).is_err());
}

#[test]
fn dyadic_weights_count_the_block() {
    // s = 1: block sizes; s = 2: Σ (ν+1) over (2^{k-1}, 2^k]
    assert_eq!(dyadic_weight(0, 1), 1.0);
    assert_eq!(dyadic_weight(0, 2), 2.0);
    for k in 1..10u32 {
        let lo = (1u64 << (k - 1)) + 1;
        let hi = 1u64 << k;
        assert_eq!(dyadic_weight(k, 1), (hi - lo + 1) as f64);
        let direct = ((hi + 1) * (hi + 2) / 2 - lo * (lo + 1) / 2) as f64;
        assert_eq!(dyadic_weight(k, 2), direct, "k={k}");
    }
}

#[test]
fn reports_follow_the_ratio_rules() {
    let cfg = HarnessConfig::default();
    let sigmas = [8.0, 16.0, 32.0, 64.0];
    let ok = EquivalenceReport::assemble(
        "a",
        "b",
        &sigmas,
        vec![1.0, 0.5, 0.25, 0.125],
        vec![2.0, 1.0, 0.5, 0.25],
        &cfg,
    );
    assert_eq!(ok.verdict, Verdict::Pass);
    assert!((ok.spread() - 1.0).abs() < 1e-15);
    assert!((ok.lhs_alpha.unwrap() - 1.0).abs() < 1e-12);

    let floor = EquivalenceReport::assemble("a", "b", &sigmas, vec![0.0; 4], vec![1e-12; 4], &cfg);
    assert!(floor.noise_floor && floor.verdict.passed());

    let bad = EquivalenceReport::assemble("a", "b", &sigmas, vec![1.0; 4], vec![1.0, 1.0, 1.0, 0.0], &cfg);
    assert!(bad.violation && !bad.verdict.passed());

    let wide = EquivalenceReport::assemble("a", "b", &sigmas, vec![1.0, 1.0, 1.0, 100.0], vec![1.0; 4], &cfg);
    assert_eq!(wide.verdict, Verdict::Fail);
}

#[test]
fn parameters_outside_the_range_are_refused() {
    assert!(CheckParams { r: 1, s: 2, p: 2.0 }.validate().is_ok());
    assert!(CheckParams { r: 1, s: 3, p: 2.0 }.validate().is_err());
    assert!(CheckParams { r: 1, s: 0, p: 2.0 }.validate().is_err());
    assert!(CheckParams { r: 1, s: 1, p: 0.5 }.validate().is_err());
    assert!(CheckParams { r: 1, s: 1, p: 1.0 }.validate().is_err());
    assert!(CheckParams { r: 1, s: 2, p: 1.0 }.validate().is_ok());
}

#[test]
fn zero_function_passes_vacuously() {
    let quad = QuadratureSpec::default();
    let op = PreparedOperator::new(OperatorFamily::BSpline(3), &quad).unwrap();
    let zero = RealFunction::constant(0.0, Interval::symmetric(1.0));
    let report = direct_estimate_check(
        &zero,
        &op,
        &CheckParams { r: 1, s: 1, p: 2.0 },
        &dyadic_ladder(8.0, 64.0),
        &HarnessConfig::default(),
    )
    .unwrap();
    assert!(report.noise_floor);
    assert_eq!(report.verdict, Verdict::Pass);
}

#[test]
fn direct_estimate_holds_for_the_step() {
    let quad = QuadratureSpec::default();
    let op = PreparedOperator::new(OperatorFamily::BSpline(3), &quad).unwrap();
    let report = direct_estimate_check(
        &zoo::step(),
        &op,
        &CheckParams { r: 1, s: 1, p: 2.0 },
        &dyadic_ladder(8.0, 64.0),
        &HarnessConfig::default(),
    )
    .unwrap();
    assert_eq!(report.verdict, Verdict::Pass, "{report:?}");
    // both sides decay like σ^{-1/2}
    assert!((report.lhs_alpha.unwrap() - 0.5).abs() < 0.1);
    assert!((report.rhs_alpha.unwrap() - 0.5).abs() < 0.1);
}

#[test]
fn zoo_predictions() {
    let members = zoo::zoo();
    let alpha = |name: &str, p: f64, order: f64| {
        members
            .iter()
            .find(|m| m.name == name)
            .unwrap()
            .expected_alpha(p, order)
    };
    assert_eq!(alpha("step", 2.0, 2.0), ExpectedAlpha::Finite(0.5));
    assert_eq!(alpha("hat", 1.0, 4.0), ExpectedAlpha::Finite(2.0));
    assert_eq!(alpha("hat", 2.0, 1.0), ExpectedAlpha::Finite(1.0));
    assert_eq!(alpha("cusp0.3", 2.0, 2.0), ExpectedAlpha::Finite(0.8));
    assert_eq!(alpha("bump", 2.0, 2.0), ExpectedAlpha::Unbounded);
    assert!(members.iter().any(|m| m.name == "gaussian"));
}

#[test]
fn corollary_names_round_trip() {
    for id in CorollaryId::ALL {
        assert_eq!(CorollaryId::parse(id.name()), Some(id));
        let setup = id.default_setup();
        assert!(setup.s <= 2.0 * setup.r as f64);
    }
    assert_eq!(CorollaryId::parse("cor9"), None);
}
