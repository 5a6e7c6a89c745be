//! Suite catalog and execution. Members are evaluated in parallel; results
//! are collected in configuration order so outputs do not depend on
//! scheduling.

use rayon::prelude::*;

use sampsmooth_core::analysis::{
    corollary_case, direct_estimate_check, global_properties, inverse_estimate_check, member_properties, partner_for,
    rate_fit, smoothness_of_operator_check, CheckKind, CorollaryCase, CorollaryId, EquivalenceReport, PreparedOperator,
    PropertyCheck, RateTable,
};
use sampsmooth_core::Result;

use crate::config::{Kind, Plan, Suite};
use crate::output::fmt_value;

pub struct SuiteInfo {
    pub kind: Kind,
    pub summary: &'static str,
    /// `(name, default and meaning)`.
    pub parameters: &'static [(&'static str, &'static str)],
}

const COMMON: &[(&str, &str)] = &[
    ("p", "2; integrability exponent, 1 <= p < infinity"),
    (
        "ladder",
        "\"8:256\"; dyadic range lo:hi or an explicit list, at least 4 rungs",
    ),
    (
        "zoo",
        "all members; bump, hat, step, cusp0.3, cusp0.7, bandlimited, gaussian",
    ),
    ("quadrature", "{panels: 64, nodes_per_panel: 8, tail_tolerance: 1e-4}"),
    ("harness", "{spread_bound: 50, alpha_tolerance: 0.1, h_grid_size: 64}"),
    ("seed", "seed of the band-limited member and of Kadec grids"),
];

pub const SUITES: [SuiteInfo; 5] = [
    SuiteInfo {
        kind: Kind::Corollary,
        summary: "equivalence of error decay, smoothness sum and (sinc) operator smoothness for one corollary",
        parameters: &[
            ("corollary_id", "required; cor3S, cor3SR, cor3Sr, corGa or corHa"),
            ("kernel", "the corollary's operator (sinc, riesz s=2 delta=2, bspline order 3, gaussian, gaussian_interpolation epsilon=0.2)"),
            ("r", "1"),
            ("s", "2 for cor3S/cor3SR, 1 otherwise; s <= 2r"),
        ],
    },
    SuiteInfo {
        kind: Kind::Direct,
        summary: "operator error against the semi-discrete K-functional surrogate",
        parameters: &[("kernel", "sinc"), ("r", "1"), ("s", "2; integer, s <= 2r")],
    },
    SuiteInfo {
        kind: Kind::Inverse,
        summary: "semi-discrete K-functional against the weighted sum of operator errors",
        parameters: &[("kernel", "sinc"), ("r", "1"), ("s", "2; integer, s <= 2r")],
    },
    SuiteInfo {
        kind: Kind::SmoothnessOfOperator,
        summary: "semi-discrete K-functional against the dyadic sum of scaled Sobolev seminorms of the approximants",
        parameters: &[("kernel", "sinc (the only nested interpolatory family)"), ("r", "1"), ("s", "2; integer, s <= 2r")],
    },
    SuiteInfo {
        kind: Kind::Properties,
        summary: "moduli and tau-moduli properties, averaged-operator bounds, K-functional constants, convergence criterion",
        parameters: &[("zoo", "at least two members")],
    },
];

/// Text for `list-suites`.
pub fn listing() -> String {
    let mut out = String::from("suites:\n");
    for s in &SUITES {
        out.push_str(&format!("\n  {}\n    {}\n", s.kind.name(), s.summary));
        for (name, default) in s.parameters {
            out.push_str(&format!("    {name:<14} {default}\n"));
        }
    }
    out.push_str("\ncommon parameters:\n");
    for (name, default) in COMMON {
        out.push_str(&format!("    {name:<14} {default}\n"));
    }
    out
}

/// A CSV table before serialization.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    /// File stem.
    pub name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// Footer records, written after the rows; the first field starts with `#`.
    pub footer: Vec<Vec<String>>,
}

/// One line of the standard-output summary.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryLine {
    pub function: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub title: String,
    pub tables: Vec<Table>,
    /// Plot stem with its fit.
    pub rates: Vec<(String, RateTable)>,
    pub summary: Vec<SummaryLine>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.summary.iter().all(|l| l.passed)
    }
}

fn verdict_word(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

fn alpha_text(a: Option<f64>) -> String {
    a.map_or_else(|| "-".to_string(), |a| format!("{a:.3}"))
}

fn stem(parts: &[&str]) -> String {
    parts
        .iter()
        .map(|p| {
            p.chars()
                .map(|c| {
                    if c.is_ascii_alphanumeric() || c == '.' || c == '-' {
                        c
                    } else {
                        '_'
                    }
                })
                .collect::<String>()
        })
        .collect::<Vec<_>>()
        .join("_")
}

/// Runs the plan.
pub fn execute(plan: &Plan) -> Result<Outcome> {
    match &plan.suite {
        Suite::Corollary(setup) => {
            let op = PreparedOperator::new(setup.family, &plan.harness.quad)?;
            let cases: Vec<CorollaryCase> = plan
                .members
                .par_iter()
                .map(|m| corollary_case(setup, &op, m, plan.p, &plan.ladder, &plan.harness))
                .collect::<Result<_>>()?;
            Ok(corollary_outcome(setup.id, &setup.family.name(), plan.p, &cases))
        }
        Suite::Check { kind, family, params } => {
            let op = PreparedOperator::new(*family, &plan.harness.quad)?;
            let reports: Vec<EquivalenceReport> = plan
                .members
                .par_iter()
                .map(|m| match kind {
                    Kind::Direct => direct_estimate_check(&m.f, &op, params, &plan.ladder, &plan.harness),
                    Kind::Inverse => inverse_estimate_check(&m.f, &op, params, &plan.ladder, &plan.harness),
                    _ => smoothness_of_operator_check(&m.f, &op, params, &plan.ladder, &plan.harness),
                })
                .collect::<Result<_>>()?;
            let names: Vec<&str> = plan.members.iter().map(|m| m.name.as_str()).collect();
            let title = format!(
                "{} ({}, r = {}, s = {}, p = {})",
                kind.name(),
                family.name(),
                params.r,
                params.s,
                params.p
            );
            Ok(check_outcome(*kind, title, &names, &reports))
        }
        Suite::Properties(cfg) => {
            let mut checks = global_properties(cfg)?;
            let per_member: Vec<Vec<PropertyCheck>> = (0..plan.members.len())
                .into_par_iter()
                .map(|i| member_properties(&plan.members[i], partner_for(&plan.members, i)?, cfg))
                .collect::<Result<_>>()?;
            checks.extend(per_member.into_iter().flatten());
            Ok(properties_outcome(&checks))
        }
    }
}

fn corollary_outcome(id: CorollaryId, family: &str, p: f64, cases: &[CorollaryCase]) -> Outcome {
    let mut rows = Vec::new();
    let mut footer = Vec::new();
    let mut rates = Vec::new();
    let mut summary = Vec::new();
    for case in cases {
        let series = |name: &str| case.properties.iter().find(|s| s.name == name);
        let err = series("error").expect("error series");
        let k = series("semidiscrete_k").expect("smoothness series");
        let sob = series("sobolev_scaled");
        for (i, sigma) in case.sigmas.iter().enumerate() {
            rows.push(vec![
                case.function.clone(),
                fmt_value(*sigma),
                fmt_value(err.values[i]),
                fmt_value(k.values[i]),
                sob.map_or_else(String::new, |s| fmt_value(s.values[i])),
                fmt_value(err.values[i] / k.values[i]),
            ]);
        }
        let fitted = |s: Option<&sampsmooth_core::analysis::PropertySeries>| {
            s.and_then(|s| s.alpha()).map_or_else(String::new, fmt_value)
        };
        footer.push(vec![
            "#fitted_alpha".into(),
            case.function.clone(),
            String::new(),
            fitted(Some(err)),
            fitted(Some(k)),
            fitted(sob),
            String::new(),
        ]);
        let spread = case.reports.iter().map(|r| r.spread()).fold(1.0, f64::max);
        footer.push(vec![
            "#verdict".into(),
            case.function.clone(),
            verdict_word(case.verdict.passed()).into(),
            format!("rate_regime={}", case.rate_regime),
            format!(
                "alpha_spread={}",
                case.alpha_spread.map_or_else(|| "nan".into(), fmt_value)
            ),
            format!("ratio_spread={}", fmt_value(spread)),
        ]);
        for s in &case.properties {
            if let Some(t) = &s.table {
                rates.push((stem(&["corollary", id.name(), &case.function, &s.name]), t.clone()));
            }
        }
        let alphas: Vec<String> = case
            .properties
            .iter()
            .map(|s| format!("{}={}", s.name, alpha_text(s.alpha())))
            .collect();
        summary.push(SummaryLine {
            function: case.function.clone(),
            passed: case.verdict.passed(),
            detail: format!(
                "alpha {} spread {:.3}{}",
                alphas.join(" "),
                spread,
                if case.rate_regime {
                    ""
                } else {
                    " (saturated: direct bound only)"
                }
            ),
        });
    }
    Outcome {
        title: format!("corollary {} ({family}, p = {p})", id.name()),
        tables: vec![Table {
            name: stem(&["corollary", id.name()]),
            header: ["function", "sigma", "err", "semidiscrete_k", "sobolev_scaled", "ratio"]
                .map(String::from)
                .to_vec(),
            rows,
            footer,
        }],
        rates,
        summary,
    }
}

fn check_outcome(kind: Kind, title: String, names: &[&str], reports: &[EquivalenceReport]) -> Outcome {
    let first = &reports[0];
    let header = vec![
        "function".to_string(),
        "sigma".to_string(),
        first.lhs_name.clone(),
        first.rhs_name.clone(),
        "ratio".to_string(),
    ];
    let mut rows = Vec::new();
    let mut footer = Vec::new();
    let mut rates = Vec::new();
    let mut summary = Vec::new();
    for (name, rep) in names.iter().zip(reports) {
        for i in 0..rep.sigmas.len() {
            rows.push(vec![
                name.to_string(),
                fmt_value(rep.sigmas[i]),
                fmt_value(rep.lhs[i]),
                fmt_value(rep.rhs[i]),
                fmt_value(rep.ratios[i]),
            ]);
        }
        footer.push(vec![
            "#fitted_alpha".into(),
            name.to_string(),
            String::new(),
            rep.lhs_alpha.map_or_else(String::new, fmt_value),
            rep.rhs_alpha.map_or_else(String::new, fmt_value),
        ]);
        footer.push(vec![
            "#verdict".into(),
            name.to_string(),
            verdict_word(rep.verdict.passed()).into(),
            format!("ratio_min={}", fmt_value(rep.ratio_min)),
            format!("ratio_max={}", fmt_value(rep.ratio_max)),
            format!("noise_floor={}", rep.noise_floor),
            format!("violation={}", rep.violation),
        ]);
        for (series, values) in [(&rep.lhs_name, &rep.lhs), (&rep.rhs_name, &rep.rhs)] {
            if let Ok(t) = rate_fit(series.clone(), &rep.sigmas, values) {
                rates.push((stem(&[kind.name(), name, series]), t));
            }
        }
        let detail = if rep.noise_floor {
            "both sides at the noise floor".to_string()
        } else {
            format!(
                "ratio [{:.3e}, {:.3e}] alpha {}/{}{}",
                rep.ratio_min,
                rep.ratio_max,
                alpha_text(rep.lhs_alpha),
                alpha_text(rep.rhs_alpha),
                if rep.violation { " (rhs vanished)" } else { "" }
            )
        };
        summary.push(SummaryLine {
            function: name.to_string(),
            passed: rep.verdict.passed(),
            detail,
        });
    }
    Outcome {
        title,
        tables: vec![Table {
            name: kind.name().to_string(),
            header,
            rows,
            footer,
        }],
        rates,
        summary,
    }
}

fn properties_outcome(checks: &[PropertyCheck]) -> Outcome {
    let rows = checks
        .iter()
        .map(|c| {
            vec![
                c.property.clone(),
                c.function.clone(),
                c.parameters.clone(),
                fmt_value(c.value),
                fmt_value(c.bound),
                match c.kind {
                    CheckKind::Assertion => "assert".into(),
                    CheckKind::Report => "report".into(),
                },
                verdict_word(c.passed).into(),
            ]
        })
        .collect();
    // one summary line per property name
    let mut summary: Vec<SummaryLine> = Vec::new();
    for c in checks {
        match summary.iter_mut().find(|l| l.function == c.property) {
            Some(line) => line.passed &= c.passed,
            None => summary.push(SummaryLine {
                function: c.property.clone(),
                passed: c.passed,
                detail: String::new(),
            }),
        }
    }
    for line in &mut summary {
        let group: Vec<&PropertyCheck> = checks.iter().filter(|c| c.property == line.function).collect();
        let failed = group.iter().filter(|c| !c.passed).count();
        line.detail = match group[0].kind {
            CheckKind::Assertion => format!("{} checks, {failed} failed", group.len()),
            CheckKind::Report => {
                let max = group.iter().map(|c| c.value).fold(0.0, f64::max);
                format!("reported, max {max:.4}")
            }
        };
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    Outcome {
        title: "properties".into(),
        tables: vec![Table {
            name: "properties".into(),
            header: ["property", "function", "parameters", "value", "bound", "kind", "passed"]
                .map(String::from)
                .to_vec(),
            rows,
            footer: vec![vec![
                "#verdict".into(),
                verdict_word(failed == 0).into(),
                format!("checks={}", checks.len()),
                format!("failed={failed}"),
            ]],
        }],
        rates: Vec::new(),
        summary,
    }
}
