//! Batch experiment drivers: backbone curves, distance-between-ρ-optima
//! curves, neighborhood exactness curves, schedule-quality regressions,
//! solver-difficulty curves, and the limit-theorem property checks. Every
//! runner produces deterministic CSV from a master seed.

mod runners;
mod stats;

pub use runners::{
    run_backbone_experiment, run_difficulty_experiment, run_distance_experiment,
    run_exactness_experiment, run_limit_theorem_tests, run_quality_experiment, LimitReport,
};
pub use stats::{least_squares, mean, quantile, RegressionFit};

use crate::error::{Error, Result};
use crate::exact::BnbConfig;
use crate::landscape::RhoGrid;
use serde::Deserialize;
use std::time::Duration;

/// Shared settings for all experiment runners.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    /// (N jobs, M machines) combinations.
    pub combos: Vec<(usize, usize)>,
    pub instances_per_combo: usize,
    /// Runs per instance (SA runs for distances, starts for exactness).
    pub k: usize,
    /// Random schedules drawn per instance in the quality experiment.
    pub samples_per_instance: usize,
    pub grid: RhoGrid,
    pub master_seed: u64,
    pub node_limit: Option<u64>,
    pub time_limit_seconds: Option<f64>,
    /// Default output location, overridable on the command line.
    pub out: Option<String>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            combos: vec![(6, 6), (8, 4), (9, 3)],
            instances_per_combo: 50,
            k: 4,
            samples_per_instance: 100,
            grid: RhoGrid::default(),
            master_seed: 0,
            node_limit: None,
            time_limit_seconds: None,
            out: None,
        }
    }
}

impl ExperimentConfig {
    pub fn bnb(&self) -> BnbConfig {
        BnbConfig {
            node_limit: self.node_limit,
            time_limit: self.time_limit_seconds.map(Duration::from_secs_f64),
            incumbent_seed: None,
        }
    }
}

/// Parses a combo list like "6x6,9x3".
pub fn parse_combos(input: &str) -> Result<Vec<(usize, usize)>> {
    let mut combos = Vec::new();
    for part in input.split(',') {
        let part = part.trim();
        let (n, m) = part
            .split_once(['x', 'X'])
            .ok_or_else(|| Error::Parse(format!("combo '{part}' is not of the form NxM")))?;
        let n: usize = n
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad job count in combo '{part}'")))?;
        let m: usize = m
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad machine count in combo '{part}'")))?;
        if n == 0 || m == 0 || n > 10_000 || m > 10_000 {
            return Err(Error::Parse(format!("combo '{part}' out of range")));
        }
        combos.push((n, m));
    }
    if combos.is_empty() {
        return Err(Error::Parse("empty combo list".into()));
    }
    Ok(combos)
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    combos: Option<String>,
    instances: Option<usize>,
    k: Option<usize>,
    samples: Option<usize>,
    seed: Option<u64>,
    rho_min: Option<f64>,
    rho_max: Option<f64>,
    rho_step: Option<f64>,
    node_limit: Option<u64>,
    time_limit: Option<f64>,
    out: Option<String>,
}

impl RawConfig {
    fn parse_key_value(input: &str) -> Result<RawConfig> {
        let mut raw = RawConfig::default();
        for (lineno, line) in input.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("line {}: expected key=value", lineno + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |what: &str| Error::Parse(format!("line {}: bad {what}", lineno + 1));
            match key {
                "combos" => raw.combos = Some(value.to_string()),
                "instances" => raw.instances = Some(value.parse().map_err(|_| bad("count"))?),
                "k" => raw.k = Some(value.parse().map_err(|_| bad("count"))?),
                "samples" => raw.samples = Some(value.parse().map_err(|_| bad("count"))?),
                "seed" => raw.seed = Some(value.parse().map_err(|_| bad("seed"))?),
                "rho_min" => raw.rho_min = Some(value.parse().map_err(|_| bad("rho"))?),
                "rho_max" => raw.rho_max = Some(value.parse().map_err(|_| bad("rho"))?),
                "rho_step" => raw.rho_step = Some(value.parse().map_err(|_| bad("rho"))?),
                "node_limit" => raw.node_limit = Some(value.parse().map_err(|_| bad("limit"))?),
                "time_limit" => raw.time_limit = Some(value.parse().map_err(|_| bad("limit"))?),
                "out" => raw.out = Some(value.to_string()),
                other => return Err(Error::Parse(format!("unknown key '{other}'"))),
            }
        }
        Ok(raw)
    }

    fn apply(self, mut config: ExperimentConfig) -> Result<ExperimentConfig> {
        if let Some(combos) = &self.combos {
            config.combos = parse_combos(combos)?;
        }
        if let Some(v) = self.instances {
            config.instances_per_combo = v;
        }
        if let Some(v) = self.k {
            config.k = v;
        }
        if let Some(v) = self.samples {
            config.samples_per_instance = v;
        }
        if let Some(v) = self.seed {
            config.master_seed = v;
        }
        if self.rho_min.is_some() || self.rho_max.is_some() || self.rho_step.is_some() {
            let min = self.rho_min.unwrap_or(1.0);
            let max = self.rho_max.unwrap_or(1.5);
            let step = self.rho_step.unwrap_or(0.01);
            if !(min.is_finite() && max.is_finite() && step.is_finite()) {
                return Err(Error::Parse("rho values must be finite".into()));
            }
            if (max - min) / step > 100_000.0 {
                return Err(Error::Parse("rho grid too fine".into()));
            }
            config.grid = RhoGrid::from_range(min, max, step)?;
        }
        if self.node_limit.is_some() {
            config.node_limit = self.node_limit;
        }
        if let Some(v) = self.time_limit {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::Parse("time limit must be positive".into()));
            }
            config.time_limit_seconds = Some(v);
        }
        if self.out.is_some() {
            config.out = self.out;
        }
        if config.instances_per_combo == 0 || config.k == 0 || config.samples_per_instance == 0 {
            return Err(Error::Parse("counts must be positive".into()));
        }
        Ok(config)
    }
}

/// Parses an experiment config file, JSON (leading '{') or key=value lines,
/// applying it on top of the defaults.
pub fn parse_config(input: &str) -> Result<ExperimentConfig> {
    let raw = if input.trim_start().starts_with('{') {
        serde_json::from_str::<RawConfig>(input)?
    } else {
        RawConfig::parse_key_value(input)?
    };
    raw.apply(ExperimentConfig::default())
}
