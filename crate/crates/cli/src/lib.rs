//! Batch runner for the `sampsmooth-core` verification suites.
//!
//! A run reads a JSON [`ExperimentConfig`], validates it against the
//! preconditions of the selected suite, executes it, and writes one CSV per
//! suite table plus one SVG log-log plot per fitted rate. Outputs depend only
//! on the configuration: repeated runs are byte-identical.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod output;
pub mod suites;

use std::path::{Path, PathBuf};

pub use config::{ConfigError, ExperimentConfig, KernelConfig, LadderSpec, Plan};
pub use suites::{execute, listing, Outcome};

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Pass = 0,
    VerdictFailure = 1,
    ConfigError = 2,
    NumericalError = 3,
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("cannot read `{path}`: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write outputs to `{path}`: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("numerical error: {0}")]
    Numerical(#[from] sampsmooth_core::Error),
}

impl RunError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            RunError::Numerical(_) => ExitCode::NumericalError,
            _ => ExitCode::ConfigError,
        }
    }
}

/// Command-line overrides applied on top of the config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub ladder: Option<String>,
}

/// Everything a finished run produced.
#[derive(Debug)]
pub struct RunReport {
    pub outcome: Outcome,
    pub files: Vec<PathBuf>,
    pub summary: String,
}

impl RunReport {
    pub fn exit_code(&self) -> ExitCode {
        if self.outcome.passed() {
            ExitCode::Pass
        } else {
            ExitCode::VerdictFailure
        }
    }
}

pub fn load_config(path: &Path, overrides: &Overrides) -> Result<ExperimentConfig, RunError> {
    let text = std::fs::read_to_string(path).map_err(|source| RunError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    let mut cfg = ExperimentConfig::from_json(&text)?;
    if let Some(seed) = overrides.seed {
        cfg.seed = Some(seed);
    }
    if let Some(ladder) = &overrides.ladder {
        config::parse_range(ladder)?;
        cfg.ladder = Some(LadderSpec::Range(ladder.clone()));
    }
    if let Some(out) = &overrides.out {
        cfg.output_dir = Some(out.clone());
    }
    Ok(cfg)
}

/// Validates, executes and writes the outputs of `cfg`.
pub fn run_config(cfg: &ExperimentConfig) -> Result<RunReport, RunError> {
    let plan = cfg.validate()?;
    let outcome = execute(&plan)?;
    let dir = cfg.output_dir.clone().unwrap_or_else(|| PathBuf::from("out"));
    let files =
        output::write_all(&dir, &outcome, &plan.config_hash).map_err(|source| RunError::Write { path: dir, source })?;
    let summary = output::summary_text(&outcome);
    Ok(RunReport {
        outcome,
        files,
        summary,
    })
}
