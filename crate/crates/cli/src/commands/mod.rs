//! Command implementations. Each takes a fully merged [`ExperimentConfig`]
//! (file overlaid with flags), validates it against the module
//! preconditions, runs, and returns the CSV rows it emits.

mod bound;
mod lecam;
mod plot;
mod sweep;

pub use bound::cmd_bound;
pub use lecam::{cmd_lecam, LecamOutput};
pub use plot::{cmd_plot, PlotParams};
pub use sweep::cmd_sweep;

use sgs_core::{
    EstimatorSpec, InitialDistribution, NoiseKind, SamplerSpec, SgldConfig, StepSchedule,
    UlaConfig,
};

use crate::config::ExperimentConfig;
use crate::error::{CliError, CliResult};

pub(crate) fn require_f64(value: Option<f64>, name: &str) -> CliResult<f64> {
    value.ok_or_else(|| CliError::config(format!("missing required parameter: {name}")))
}

pub(crate) fn require_usize(value: Option<usize>, name: &str) -> CliResult<usize> {
    value.ok_or_else(|| CliError::config(format!("missing required parameter: {name}")))
}

/// Integer query budget for protocol-running commands.
pub(crate) fn integer_budget(n: f64) -> CliResult<u64> {
    if n.fract() != 0.0 || n < 1.0 || n > 9.0e15 {
        return Err(CliError::config(format!(
            "n = {n} must be a positive integer for experiment commands"
        )));
    }
    Ok(n as u64)
}

pub(crate) fn resolve_noise(spec: Option<&str>, default: NoiseKind) -> CliResult<NoiseKind> {
    match spec {
        None => Ok(default),
        Some("exact") => Ok(NoiseKind::Exact),
        Some("isotropic") => Ok(NoiseKind::IsotropicGaussian),
        Some("first-coordinate") => Ok(NoiseKind::FirstCoordinate),
        Some(other) => Err(CliError::config(format!(
            "unknown noise kind {other:?}; expected exact|isotropic|first-coordinate"
        ))),
    }
}

/// Builds the sampler spec for a family scale `alpha` and budget `n`.
/// Default schedule: constant `1/(alpha*max(sqrt(n), 2))`.
pub(crate) fn resolve_sampler(
    cfg: &ExperimentConfig,
    alpha: f64,
    n: usize,
) -> CliResult<SamplerSpec> {
    let name = cfg.sampler.as_deref().unwrap_or("sgld");
    let default_eta = SgldConfig::default_for(alpha, n)?;
    let schedule = match (cfg.schedule.as_deref(), cfg.eta, cfg.schedule_c) {
        (None | Some("default"), None, None) => default_eta.schedule,
        (None | Some("default") | Some("constant"), Some(eta), _) => StepSchedule::Constant(eta),
        (Some("constant"), None, _) => {
            return Err(CliError::config("schedule \"constant\" requires eta"));
        }
        (Some("inverse-time"), _, Some(c)) => StepSchedule::InverseTime { c },
        (Some("inverse-time"), _, None) => {
            return Err(CliError::config("schedule \"inverse-time\" requires schedule_c"));
        }
        (Some(other), _, _) => {
            return Err(CliError::config(format!(
                "unknown schedule {other:?}; expected default|constant|inverse-time"
            )));
        }
        (None, None, Some(_)) => {
            return Err(CliError::config("schedule_c requires schedule = \"inverse-time\""));
        }
    };
    let init = InitialDistribution::PointMassOrigin;
    match name {
        "ula" => {
            let eta = match schedule {
                StepSchedule::Constant(eta) => eta,
                StepSchedule::InverseTime { .. } => {
                    return Err(CliError::config("ula takes a constant step, not a schedule"));
                }
            };
            Ok(SamplerSpec::Ula(UlaConfig::new(eta)?.with_init(init)))
        }
        "sgld" => Ok(SamplerSpec::Sgld(SgldConfig::new(schedule)?.with_init(init))),
        "baseline" => Ok(SamplerSpec::Baseline),
        other => Err(CliError::config(format!(
            "unknown sampler {other:?}; expected ula|sgld|baseline"
        ))),
    }
}

pub(crate) fn resolve_estimator(
    spec: Option<&str>,
    sampler: &SamplerSpec,
) -> CliResult<EstimatorSpec> {
    match spec {
        Some("first-coord") => Ok(EstimatorSpec::FirstCoordinateOfSample),
        Some("baseline-mean") => Ok(EstimatorSpec::BaselineMeanEstimate),
        Some(other) => Err(CliError::config(format!(
            "unknown estimator {other:?}; expected first-coord|baseline-mean"
        ))),
        None => Ok(match sampler {
            SamplerSpec::Baseline => EstimatorSpec::BaselineMeanEstimate,
            _ => EstimatorSpec::FirstCoordinateOfSample,
        }),
    }
}
