//! Experiment configuration: the JSON document, its validation, and the
//! resolved [`Plan`] the runner executes.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use sampsmooth_core::analysis::{
    dyadic_ladder, zoo_with_seed, CheckParams, CorollaryId, CorollarySetup, HarnessConfig, OperatorFamily,
    PropertyConfig, ZooFunction, DEFAULT_ZOO_SEED, MIN_RUNGS,
};
use sampsmooth_core::{Error as CoreError, QuadratureSpec};

use crate::suites::SUITES;

/// A field-level configuration problem.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("config error in `{field}`: {message}")]
pub struct ConfigError {
    pub field: String,
    pub message: String,
}

impl ConfigError {
    pub fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        ConfigError {
            field: field.into(),
            message: message.into(),
        }
    }

    fn from_core(field: &str, err: CoreError) -> Self {
        match err {
            CoreError::InvalidParameter { name, reason } => ConfigError::new(name, reason),
            other => ConfigError::new(field, other.to_string()),
        }
    }
}

/// Kernel family with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum KernelConfig {
    Sinc,
    Bspline {
        order: usize,
    },
    Gaussian,
    Riesz {
        s: f64,
        delta: f64,
    },
    GaussianInterpolation {
        epsilon: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        seed: Option<u64>,
        #[serde(default = "default_half_width")]
        half_width: f64,
    },
}

fn default_half_width() -> f64 {
    4.0
}

impl KernelConfig {
    fn family(self, seed: u64) -> OperatorFamily {
        match self {
            KernelConfig::Sinc => OperatorFamily::Sinc,
            KernelConfig::Bspline { order } => OperatorFamily::BSpline(order),
            KernelConfig::Gaussian => OperatorFamily::Gaussian,
            KernelConfig::Riesz { s, delta } => OperatorFamily::Riesz { s, delta },
            KernelConfig::GaussianInterpolation {
                epsilon,
                seed: own,
                half_width,
            } => OperatorFamily::GaussianInterpolation {
                epsilon,
                seed: own.unwrap_or(seed),
                half_width,
            },
        }
    }
}

/// Either an explicit list of `σ` values or a dyadic range `"lo:hi"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LadderSpec {
    List(Vec<f64>),
    Range(String),
}

impl LadderSpec {
    pub fn resolve(&self) -> Result<Vec<f64>, ConfigError> {
        let ladder = match self {
            LadderSpec::List(v) => v.clone(),
            LadderSpec::Range(text) => parse_range(text)?,
        };
        if ladder.len() < MIN_RUNGS {
            return Err(ConfigError::new(
                "ladder",
                format!("need at least {MIN_RUNGS} rungs, got {}", ladder.len()),
            ));
        }
        if ladder.iter().any(|s| !(s.is_finite() && *s > 0.0)) || ladder.windows(2).any(|w| w[1] <= w[0]) {
            return Err(ConfigError::new(
                "ladder",
                "values must be positive and strictly increasing",
            ));
        }
        Ok(ladder)
    }
}

/// `"8:256"` as the dyadic ladder `8, 16, …, 256`.
pub fn parse_range(text: &str) -> Result<Vec<f64>, ConfigError> {
    let bad = || ConfigError::new("ladder", format!("`{text}` is not of the form lo:hi"));
    let (lo, hi) = text.split_once(':').ok_or_else(bad)?;
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    if !(lo > 0.0 && hi >= lo && hi.is_finite()) {
        return Err(bad());
    }
    Ok(dyadic_ladder(lo, hi))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadratureConfig {
    pub panels: usize,
    pub nodes_per_panel: usize,
    pub tail_tolerance: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        let q = QuadratureSpec::default();
        QuadratureConfig {
            panels: q.panels,
            nodes_per_panel: q.nodes_per_panel,
            tail_tolerance: q.tail_tolerance,
        }
    }
}

/// Pass thresholds; unset fields keep the library defaults.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HarnessOverrides {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spread_bound: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha_tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_grid_size: Option<usize>,
}

/// The JSON experiment document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub suite: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corollary_id: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kernel: Option<KernelConfig>,
    #[serde(default = "default_p")]
    pub p: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ladder: Option<LadderSpec>,
    /// Member names; all members when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zoo: Option<Vec<String>>,
    #[serde(default)]
    pub quadrature: QuadratureConfig,
    #[serde(default)]
    pub harness: HarnessOverrides,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

fn default_p() -> f64 {
    2.0
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        serde_json::from_str(text).map_err(|e| ConfigError::new(field_of(&e), e.to_string()))
    }

    /// SHA-256 of the canonical JSON form, with the output location left
    /// out so that relocated runs share a hash.
    pub fn hash(&self) -> String {
        let mut canonical = self.clone();
        canonical.output_dir = None;
        let json = serde_json::to_string(&canonical).expect("config serializes");
        let digest = Sha256::digest(json.as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_ZOO_SEED)
    }

    /// Checks every field against the preconditions of the selected suite.
    pub fn validate(&self) -> Result<Plan, ConfigError> {
        let kind = Kind::parse(&self.suite)?;
        if !(self.p >= 1.0 && self.p.is_finite()) {
            return Err(ConfigError::new("p", "need 1 <= p < infinity"));
        }
        let quad = QuadratureSpec::new(
            self.quadrature.panels,
            self.quadrature.nodes_per_panel,
            self.quadrature.tail_tolerance,
        )
        .map_err(|e| ConfigError::from_core("quadrature", e))?;
        let mut harness = HarnessConfig {
            quad,
            ..HarnessConfig::default()
        };
        if let Some(v) = self.harness.spread_bound {
            if !(v >= 1.0) {
                return Err(ConfigError::new("harness.spread_bound", "must be at least 1"));
            }
            harness.spread_bound = v;
        }
        if let Some(v) = self.harness.alpha_tolerance {
            if !(v >= 0.0) {
                return Err(ConfigError::new("harness.alpha_tolerance", "must be non-negative"));
            }
            harness.alpha_tolerance = v;
        }
        if let Some(v) = self.harness.h_grid_size {
            if v == 0 {
                return Err(ConfigError::new("harness.h_grid_size", "must be positive"));
            }
            harness.h_grid_size = v;
        }
        let ladder = match &self.ladder {
            Some(spec) => spec.resolve()?,
            None => sampsmooth_core::analysis::default_ladder(),
        };
        let members = self.members()?;
        let seed = self.seed();
        let suite = match kind {
            Kind::Corollary => {
                let name = self
                    .corollary_id
                    .as_deref()
                    .ok_or_else(|| ConfigError::new("corollary_id", "required for the corollary suite"))?;
                let id = CorollaryId::parse(name).ok_or_else(|| {
                    let known: Vec<&str> = CorollaryId::ALL.iter().map(|c| c.name()).collect();
                    ConfigError::new(
                        "corollary_id",
                        format!("unknown `{name}`; expected one of {}", known.join(", ")),
                    )
                })?;
                let mut setup = id.default_setup();
                if let Some(k) = self.kernel {
                    setup.family = k.family(seed);
                } else if let OperatorFamily::GaussianInterpolation { seed: s, .. } = &mut setup.family {
                    if self.seed.is_some() {
                        *s = seed;
                    }
                }
                if let Some(r) = self.r {
                    setup.r = r;
                }
                if let Some(s) = self.s {
                    setup.s = s;
                }
                setup
                    .validate(self.p)
                    .map_err(|e| ConfigError::from_core("corollary_id", e))?;
                Suite::Corollary(setup)
            }
            Kind::Direct | Kind::Inverse | Kind::SmoothnessOfOperator => {
                let family = self.kernel.map(|k| k.family(seed)).unwrap_or(OperatorFamily::Sinc);
                let s = self.s.unwrap_or(2.0);
                if s.fract() != 0.0 || s < 1.0 {
                    return Err(ConfigError::new("s", format!("{s} is not a positive integer")));
                }
                let params = CheckParams {
                    r: self.r.unwrap_or(1),
                    s: s as usize,
                    p: self.p,
                };
                params.validate().map_err(|e| ConfigError::from_core("s", e))?;
                if kind == Kind::SmoothnessOfOperator && family != OperatorFamily::Sinc {
                    return Err(ConfigError::new(
                        "kernel",
                        format!(
                            "{} is not interpolatory on nested dyadic grids; use sinc",
                            family.name()
                        ),
                    ));
                }
                if let OperatorFamily::GaussianInterpolation { .. } = family {
                    if self.p != 2.0 {
                        return Err(ConfigError::new(
                            "p",
                            "irregular-grid interpolation is covered for p = 2 only",
                        ));
                    }
                }
                Suite::Check { kind, family, params }
            }
            Kind::Properties => {
                if members.len() < 2 {
                    return Err(ConfigError::new("zoo", "the property suite needs at least two members"));
                }
                Suite::Properties(PropertyConfig {
                    quad,
                    h_grid_size: harness.h_grid_size,
                    ..PropertyConfig::default()
                })
            }
        };
        Ok(Plan {
            suite,
            p: self.p,
            ladder,
            members,
            harness,
            config_hash: self.hash(),
        })
    }

    fn members(&self) -> Result<Vec<ZooFunction>, ConfigError> {
        let all = zoo_with_seed(self.seed());
        let Some(names) = &self.zoo else {
            return Ok(all);
        };
        if names.is_empty() {
            return Err(ConfigError::new("zoo", "empty selection"));
        }
        names
            .iter()
            .map(|name| {
                all.iter().find(|m| &m.name == name).cloned().ok_or_else(|| {
                    let known: Vec<&str> = all.iter().map(|m| m.name.as_str()).collect();
                    ConfigError::new(
                        "zoo",
                        format!("unknown member `{name}`; expected one of {}", known.join(", ")),
                    )
                })
            })
            .collect()
    }
}

/// Best-effort field name from a serde error message.
fn field_of(err: &serde_json::Error) -> String {
    let text = err.to_string();
    for marker in ["unknown field `", "missing field `"] {
        if let Some(rest) = text.split_once(marker).map(|(_, r)| r) {
            if let Some((name, _)) = rest.split_once('`') {
                return name.to_string();
            }
        }
    }
    "<document>".to_string()
}

/// Suite names as they appear in configs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Corollary,
    Direct,
    Inverse,
    SmoothnessOfOperator,
    Properties,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Corollary => "corollary",
            Kind::Direct => "direct",
            Kind::Inverse => "inverse",
            Kind::SmoothnessOfOperator => "smoothness_of_operator",
            Kind::Properties => "properties",
        }
    }

    pub fn parse(name: &str) -> Result<Kind, ConfigError> {
        SUITES
            .iter()
            .find(|s| s.kind.name() == name)
            .map(|s| s.kind)
            .ok_or_else(|| {
                let known: Vec<&str> = SUITES.iter().map(|s| s.kind.name()).collect();
                ConfigError::new(
                    "suite",
                    format!("unknown suite `{name}`; available: {}", known.join(", ")),
                )
            })
    }
}

/// What a validated config runs.
#[derive(Debug, Clone)]
pub enum Suite {
    Corollary(CorollarySetup),
    Check {
        kind: Kind,
        family: OperatorFamily,
        params: CheckParams,
    },
    Properties(PropertyConfig),
}

#[derive(Debug, Clone)]
pub struct Plan {
    pub suite: Suite,
    pub p: f64,
    pub ladder: Vec<f64>,
    pub members: Vec<ZooFunction>,
    pub harness: HarnessConfig,
    pub config_hash: String,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> ExperimentConfig {
        ExperimentConfig::from_json(text).unwrap()
    }

    #[test]
    fn minimal_config_gets_defaults() {
        let plan = parse(r#"{"suite": "properties"}"#).validate().unwrap();
        assert_eq!(plan.ladder, vec![8.0, 16.0, 32.0, 64.0, 128.0, 256.0]);
        assert_eq!(plan.members.len(), 7);
        assert_eq!(plan.p, 2.0);
    }

    #[test]
    fn s_above_2r_cites_the_constraint() {
        let err = parse(r#"{"suite": "direct", "r": 1, "s": 3}"#).validate().unwrap_err();
        assert_eq!(err.field, "s");
        assert!(err.to_string().contains("s <= 2r"), "{err}");
        let err = parse(r#"{"suite": "corollary", "corollary_id": "cor3S", "r": 1, "s": 4}"#)
            .validate()
            .unwrap_err();
        assert!(err.to_string().contains("s <= 2r"), "{err}");
    }

    #[test]
    fn unknown_names_echo_the_choices() {
        let err = parse(r#"{"suite": "fourier"}"#).validate().unwrap_err();
        assert!(err
            .message
            .contains("corollary, direct, inverse, smoothness_of_operator, properties"));
        let err = parse(r#"{"suite": "direct", "zoo": ["sawtooth"]}"#)
            .validate()
            .unwrap_err();
        assert_eq!(err.field, "zoo");
        assert!(err.message.contains("step"));
        let err = ExperimentConfig::from_json(r#"{"suite": "direct", "sigma": 3}"#).unwrap_err();
        assert_eq!(err.field, "sigma");
    }

    #[test]
    fn ladder_forms() {
        assert_eq!(parse_range("8:64").unwrap(), vec![8.0, 16.0, 32.0, 64.0]);
        assert!(parse_range("8-64").is_err());
        let cfg = parse(r#"{"suite": "direct", "ladder": [1, 2, 4]}"#);
        assert_eq!(cfg.validate().unwrap_err().field, "ladder");
        let cfg = parse(r#"{"suite": "direct", "ladder": "4:32"}"#);
        assert_eq!(cfg.validate().unwrap().ladder, vec![4.0, 8.0, 16.0, 32.0]);
    }

    #[test]
    fn kernel_must_fit_the_suite() {
        let err = parse(r#"{"suite": "smoothness_of_operator", "kernel": {"family": "gaussian"}}"#)
            .validate()
            .unwrap_err();
        assert_eq!(err.field, "kernel");
        let err =
            parse(r#"{"suite": "corollary", "corollary_id": "cor3S", "kernel": {"family": "bspline", "order": 3}}"#)
                .validate()
                .unwrap_err();
        assert_eq!(err.field, "kernel");
        let err = parse(r#"{"suite": "corollary", "corollary_id": "corHa", "p": 1}"#)
            .validate()
            .unwrap_err();
        assert!(err.message.contains("p = 2"));
    }

    #[test]
    fn hash_ignores_the_output_location() {
        let mut a = parse(r#"{"suite": "properties", "output_dir": "x"}"#);
        let h = a.hash();
        a.output_dir = Some("y".into());
        assert_eq!(a.hash(), h);
        a.seed = Some(3);
        assert_ne!(a.hash(), h);
        assert_eq!(h.len(), 64);
    }
}
