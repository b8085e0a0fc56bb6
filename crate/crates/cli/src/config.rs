//! The experiment configuration file: one flat JSON object, every key
//! optional, unknown keys rejected. Command-line flags override file values;
//! numeric validation happens when a command resolves its parameters, before
//! any work starts.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    /// `ula`, `sgld` or `baseline`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sampler: Option<String>,
    /// Constant step size; `schedule = "constant"` implied when set.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta: Option<f64>,
    /// `default`, `constant` or `inverse-time`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schedule: Option<String>,
    /// Numerator for the inverse-time schedule `eta_t = c/(t+1)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schedule_c: Option<f64>,
    /// `first-coord` or `baseline-mean`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub estimator: Option<String>,
    /// `exact`, `isotropic` or `first-coordinate`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub noise: Option<String>,
    /// `hard` (two-point instance) or `centered` (single target at the
    /// origin with explicit `alpha`).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bins: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_grid: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_grid: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma_grid: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sampler_grid: Option<Vec<String>>,
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> CliResult<Self> {
        serde_json::from_str(text)
            .map_err(|e| CliError::Config(anyhow::anyhow!("invalid config: {e}")))
    }

    pub fn from_file(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::Config(anyhow::anyhow!("cannot read config {}: {e}", path.display()))
        })?;
        Self::parse(&text)
    }

    /// Canonical serialized form; `parse(emit(c)) == c`.
    pub fn emit(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Overlays `other` (flag values) on top of `self` (file values).
    pub fn overridden_by(mut self, other: &ExperimentConfig) -> Self {
        macro_rules! take {
            ($($field:ident),*) => {
                $(if other.$field.is_some() { self.$field = other.$field.clone(); })*
            };
        }
        take!(
            n, d, sigma, alpha, sampler, eta, schedule, schedule_c, estimator, noise, target,
            trials, seed, bins, out, n_grid, d_grid, sigma_grid, sampler_grid
        );
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_identity() {
        let cfg = ExperimentConfig {
            n: Some(400.0),
            d: Some(100),
            sigma: Some(1.0),
            sampler: Some("sgld".into()),
            trials: Some(5000),
            seed: Some(7),
            n_grid: Some(vec![256, 512]),
            ..Default::default()
        };
        let parsed = ExperimentConfig::parse(&cfg.emit()).unwrap();
        assert_eq!(parsed, cfg);
        let empty = ExperimentConfig::default();
        assert_eq!(ExperimentConfig::parse(&empty.emit()).unwrap(), empty);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(ExperimentConfig::parse(r#"{"n": 4, "bogus": 1}"#).is_err());
    }

    #[test]
    fn flags_win_over_file() {
        let file = ExperimentConfig {
            n: Some(100.0),
            d: Some(8),
            ..Default::default()
        };
        let flags = ExperimentConfig {
            n: Some(200.0),
            ..Default::default()
        };
        let merged = file.overridden_by(&flags);
        assert_eq!(merged.n, Some(200.0));
        assert_eq!(merged.d, Some(8));
    }
}
