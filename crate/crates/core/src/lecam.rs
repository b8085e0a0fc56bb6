//! Monte Carlo machinery for the two-point Bayes experiment: the
//! nearest-mean test, risk estimators with distribution-free confidence
//! intervals, empirical TV lower bounds, and the randomization-gap report.
//!
//! Conventions shared by every experiment here:
//!
//! * The hypothesis is drawn under a uniform prior, realized by exact
//!   stratification (trial `k` gets hypothesis `k % 2`; odd trial counts give
//!   the extra trial to hypothesis 1). Stratification is a variance-reduction
//!   device and is flagged in the results.
//! * Confidence intervals are Hoeffding half-widths
//!   `sqrt(ln(2/0.05)/(2*trials))` at 95% — distribution-free, valid for any
//!   `[0,1]`-valued per-trial outcome, and matching the one-sided style of
//!   the DKW correction used for empirical TV.
//! * The theoretical test-error floor is `(1 - TV_bound)/2`, the two-point
//!   Bayes error under a uniform prior; it is implied by either convention
//!   for the optimal-test error, so every check against it is conservative.
//! * Trials are embarrassingly parallel over derived child seeds; error
//!   counts and loss sums are order-independent, so parallel execution
//!   replays exactly.

use std::sync::Arc;


use rayon::prelude::*;

use crate::analysis::{gaussian_tv_diag, normal_quantile, psi2_upper, GaussianLaw};
use crate::error::Error;
use crate::model::{HardInstancePair, IsotropicGaussianTarget, Theta};
use crate::oracle::{GradientOracle, NoiseKind};
use crate::protocol::{run_protocol, Sampler, Transcript};
use crate::rng::{child_seed, child_stream, std_normal, Role, StreamRng};
use crate::samplers::SamplerSpec;
use crate::Result;

/// 95% Hoeffding half-width for a mean of `trials` outcomes in `[0, 1]`.
pub fn hoeffding_ci(trials: usize) -> f64 {
    ((2.0f64 / 0.05).ln() / (2.0 * trials as f64)).sqrt()
}

/// Decision rule mapping a protocol outcome to a decision vector.
#[derive(Clone)]
pub enum EstimatorSpec {
    /// `(x1, 0, ..., 0)` from the final sample.
    FirstCoordinateOfSample,
    /// The mean estimate carried on the transcript (the averaging baseline
    /// reports one); errors when the transcript has none.
    BaselineMeanEstimate,
    /// Arbitrary transcript-based decision rule.
    Custom(Arc<dyn Fn(&Transcript) -> Result<Vec<f64>> + Send + Sync>),
}

impl std::fmt::Debug for EstimatorSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl EstimatorSpec {
    pub fn name(&self) -> &'static str {
        match self {
            EstimatorSpec::FirstCoordinateOfSample => "first-coord",
            EstimatorSpec::BaselineMeanEstimate => "baseline-mean",
            EstimatorSpec::Custom(_) => "custom",
        }
    }

    /// Decision from a full transcript.
    pub fn decide(&self, transcript: &Transcript) -> Result<Vec<f64>> {
        match self {
            EstimatorSpec::FirstCoordinateOfSample => Ok(first_coord_estimator(&transcript.sample)),
            EstimatorSpec::BaselineMeanEstimate => {
                transcript.estimate.clone().ok_or(Error::MissingEstimate {
                    estimator: "baseline-mean",
                })
            }
            EstimatorSpec::Custom(f) => f(transcript),
        }
    }

    /// Decision from a single real sample, for estimators that are genuine
    /// kernels on the sample space. Transcript-based rules cannot score a
    /// real sample and error here.
    pub fn decide_sample(&self, x: &[f64]) -> Result<Vec<f64>> {
        match self {
            EstimatorSpec::FirstCoordinateOfSample => Ok(first_coord_estimator(x)),
            EstimatorSpec::BaselineMeanEstimate => Err(Error::NotSampleBased {
                estimator: "baseline-mean",
            }),
            EstimatorSpec::Custom(_) => Err(Error::NotSampleBased {
                estimator: "custom",
            }),
        }
    }

    pub fn is_sample_based(&self) -> bool {
        matches!(self, EstimatorSpec::FirstCoordinateOfSample)
    }
}

/// `(x1, 0, ..., 0)`: keeps the only coordinate that carries mean
/// information in the two-point family.
pub fn first_coord_estimator(x: &[f64]) -> Vec<f64> {
    let mut t = vec![0.0; x.len()];
    if !x.is_empty() {
        t[0] = x[0];
    }
    t
}

/// Nearest-mean test: argmin over the two hypotheses of `||t - m_j||`.
/// Ties break toward hypothesis 1 (the choice is arbitrary and documented).
pub fn nearest_mean_test(t: &[f64], m1: &[f64], m2: &[f64]) -> Result<Theta> {
    if t.len() != m1.len() || t.len() != m2.len() {
        return Err(Error::DimensionMismatch {
            expected: m1.len(),
            got: t.len(),
        });
    }
    let d1: f64 = t.iter().zip(m1).map(|(a, b)| (a - b) * (a - b)).sum();
    let d2: f64 = t.iter().zip(m2).map(|(a, b)| (a - b) * (a - b)).sum();
    Ok(if d1 <= d2 { Theta::One } else { Theta::Two })
}

/// Per-hypothesis tally of a stratified experiment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaTally {
    pub trials: usize,
    pub errors: usize,
    pub loss_sum: f64,
}

/// Outcome of a two-point testing experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoPointResult {
    pub trials: usize,
    pub error_count: usize,
    pub error_rate: f64,
    pub ci_half_width: f64,
    pub ci_method: &'static str,
    /// `(1 - lambda*sqrt(n)/(sigma*sqrt(d)))/2`, floored at 0: the Bayes
    /// error floor implied by the transcript TV bound.
    pub theoretical_floor: f64,
    pub per_theta: [ThetaTally; 2],
    pub stratified: bool,
    pub seed: u64,
}

/// A `[0,1]`-risk estimate with a distribution-free confidence interval.
#[derive(Debug, Clone, PartialEq)]
pub struct RiskEstimate {
    pub mean: f64,
    pub ci_half_width: f64,
    pub ci_method: &'static str,
    pub trials: usize,
    /// Mean loss conditioned on each hypothesis.
    pub per_theta_mean: [f64; 2],
}

fn stratified_theta(trial: usize) -> Theta {
    if trial % 2 == 0 {
        Theta::One
    } else {
        Theta::Two
    }
}

fn draw_from_target(target: &IsotropicGaussianTarget, rng: &mut StreamRng) -> Vec<f64> {
    let sd = target.variance().sqrt();
    target
        .mean()
        .iter()
        .map(|m| m + sd * std_normal(rng))
        .collect()
}

fn aggregate_risk(outcomes: Vec<(usize, f64)>, trials: usize) -> RiskEstimate {
    let mut tally = [(0usize, 0.0f64); 2];
    let mut total = 0.0;
    for (idx, loss) in outcomes {
        tally[idx].0 += 1;
        tally[idx].1 += loss;
        total += loss;
    }
    let per_theta_mean = [
        if tally[0].0 > 0 { tally[0].1 / tally[0].0 as f64 } else { 0.0 },
        if tally[1].0 > 0 { tally[1].1 / tally[1].0 as f64 } else { 0.0 },
    ];
    RiskEstimate {
        mean: total / trials as f64,
        ci_half_width: hoeffding_ci(trials),
        ci_method: "hoeffding",
        trials,
        per_theta_mean,
    }
}

/// Risk of a sample-based estimator fed one real draw from `p_theta`,
/// averaged over the uniform prior (stratified).
fn single_sample_risk(
    estimator: &EstimatorSpec,
    pair: &HardInstancePair,
    trials: usize,
    seed: u64,
) -> Result<RiskEstimate> {
    if trials < 1 {
        return Err(Error::TooFewSamples { got: trials, min: 1 });
    }
    if !estimator.is_sample_based() {
        return Err(Error::NotSampleBased {
            estimator: estimator.name(),
        });
    }
    let outcomes: Vec<(usize, f64)> = (0..trials)
        .into_par_iter()
        .map(|k| {
            let theta = stratified_theta(k);
            let target = pair.target(theta);
            let mut rng = child_stream(seed, Role::Trial, k as u64);
            let x = draw_from_target(&target, &mut rng);
            let t = estimator
                .decide_sample(&x)
                .expect("estimator checked sample-based above");
            let loss = pair
                .loss_spec(theta)
                .eval(&t)
                .expect("dimensions match by construction");
            (theta.index(), loss)
        })
        .collect();
    Ok(aggregate_risk(outcomes, trials))
}

/// Estimates the single-sample Bayes risk bound side: the risk of the
/// first-coordinate estimator on one real draw. Its analytic value is
/// `sqrt(2*alpha/pi)` (clamping is negligible for small `alpha`) and it
/// never exceeds `sqrt(alpha)`.
pub fn estimate_psi2(pair: &HardInstancePair, trials: usize, seed: u64) -> Result<RiskEstimate> {
    single_sample_risk(&EstimatorSpec::FirstCoordinateOfSample, pair, trials, seed)
}

/// Runs the full two-point testing experiment: per trial, draw the
/// hypothesis (stratified), run the protocol against that hypothesis'
/// oracle, form the decision, apply the nearest-mean test.
#[allow(clippy::too_many_arguments)]
pub fn run_two_point_experiment(
    sampler: &dyn Sampler,
    estimator: &EstimatorSpec,
    pair: &HardInstancePair,
    n: usize,
    trials: usize,
    seed: u64,
    noise: NoiseKind,
) -> Result<TwoPointResult> {
    if trials < 100 {
        return Err(Error::TooFewSamples {
            got: trials,
            min: 100,
        });
    }
    let outcomes: Vec<Result<(usize, bool)>> = (0..trials)
        .into_par_iter()
        .map(|k| {
            let theta = stratified_theta(k);
            let oracle = GradientOracle::for_pair(pair, theta, noise);
            let run_seed = child_seed(seed, Role::Trial, k as u64);
            let mut transcript = run_protocol(sampler, &oracle, n, run_seed)?;
            transcript.theta = Some(theta.label());
            let t = estimator.decide(&transcript)?;
            let guess = nearest_mean_test(&t, pair.mean(Theta::One), pair.mean(Theta::Two))?;
            Ok((theta.index(), guess != theta))
        })
        .collect();

    let mut per_theta = [
        ThetaTally { trials: 0, errors: 0, loss_sum: 0.0 },
        ThetaTally { trials: 0, errors: 0, loss_sum: 0.0 },
    ];
    let mut error_count = 0;
    for outcome in outcomes {
        let (idx, err) = outcome?;
        per_theta[idx].trials += 1;
        if err {
            per_theta[idx].errors += 1;
            error_count += 1;
        }
    }
    let tv_bound = pair.lambda() * (n as f64).sqrt() / (pair.sigma() * (pair.dim() as f64).sqrt());
    let theoretical_floor = ((1.0 - tv_bound) / 2.0).max(0.0);
    Ok(TwoPointResult {
        trials,
        error_count,
        error_rate: error_count as f64 / trials as f64,
        ci_half_width: hoeffding_ci(trials),
        ci_method: "hoeffding",
        theoretical_floor,
        per_theta,
        stratified: true,
        seed,
    })
}

/// Risk of one concrete sequential estimator (sampler plus decision rule)
/// under the bounded loss. This is a per-rule risk: it upper-bounds the
/// optimal sequential Bayes risk and is reported next to the closed-form
/// lower bound for context.
#[allow(clippy::too_many_arguments)]
pub fn estimate_psi1_hat(
    sampler: &dyn Sampler,
    estimator: &EstimatorSpec,
    pair: &HardInstancePair,
    n: usize,
    trials: usize,
    seed: u64,
    noise: NoiseKind,
) -> Result<RiskEstimate> {
    if trials < 100 {
        return Err(Error::TooFewSamples {
            got: trials,
            min: 100,
        });
    }
    let outcomes: Vec<Result<(usize, f64)>> = (0..trials)
        .into_par_iter()
        .map(|k| {
            let theta = stratified_theta(k);
            let oracle = GradientOracle::for_pair(pair, theta, noise);
            let run_seed = child_seed(seed, Role::Trial, k as u64);
            let transcript = run_protocol(sampler, &oracle, n, run_seed)?;
            let t = estimator.decide(&transcript)?;
            let loss = pair.loss_spec(theta).eval(&t)?;
            Ok((theta.index(), loss))
        })
        .collect();
    let outcomes = outcomes.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(aggregate_risk(outcomes, trials))
}

/// One-sided empirical lower bound on `TV(law of samples, target)`.
///
/// Discriminator: the largest CDF discrepancy of the first-coordinate
/// marginal, evaluated on the `bins - 1` equal-probability quantiles of the
/// target marginal, minus the DKW sampling correction
/// `sqrt(ln(2/0.05)/(2N))`. The Kolmogorov distance lower-bounds the
/// marginal TV, which lower-bounds the joint TV, and DKW covers all
/// thresholds simultaneously, so the bound is sound at level 95% no matter
/// how the maximizing edge is selected. Equal-probability edges concentrate
/// resolution in the target bulk where the discrepancy lives.
pub fn empirical_tv_lower_bound(
    samples: &[Vec<f64>],
    target: &IsotropicGaussianTarget,
    bins: usize,
) -> Result<f64> {
    const MIN_SAMPLES: usize = 1000;
    if samples.len() < MIN_SAMPLES {
        return Err(Error::TooFewSamples {
            got: samples.len(),
            min: MIN_SAMPLES,
        });
    }
    if bins < 2 {
        return Err(Error::InvalidParameter {
            name: "bins",
            value: bins as f64,
            constraint: "bins >= 2",
        });
    }
    let n = samples.len();
    let mut first: Vec<f64> = Vec::with_capacity(n);
    for x in samples {
        if x.len() != target.dim() {
            return Err(Error::DimensionMismatch {
                expected: target.dim(),
                got: x.len(),
            });
        }
        first.push(x[0]);
    }
    first.sort_unstable_by(|a, b| a.partial_cmp(b).expect("samples must not contain NaN"));

    let m1 = target.mean()[0];
    let sd = target.variance().sqrt();
    let mut sup = 0.0f64;
    for j in 1..bins {
        let p = j as f64 / bins as f64;
        let edge = m1 + sd * normal_quantile(p)?;
        let rank = first.partition_point(|&v| v <= edge);
        let empirical = rank as f64 / n as f64;
        sup = sup.max((empirical - p).abs());
    }
    let correction = ((2.0f64 / 0.05).ln() / (2.0 * n as f64)).sqrt();
    Ok((sup - correction).max(0.0))
}

/// How a gap-report inequality check resolved.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GapVerdict {
    /// The TV side dominates the Bayes-risk gap.
    Holds,
    /// Exact TV available and strictly below the gap.
    Violated,
    /// Only an empirical TV lower bound was available and it did not reach
    /// the gap; one-sided evidence cannot conclude either way.
    NotConclusive,
}

/// Randomization-criterion report for one (sampler, estimator) pair on a
/// two-point instance.
#[derive(Debug, Clone)]
pub struct GapReport {
    pub sampler: &'static str,
    pub estimator: &'static str,
    pub n: usize,
    pub trials: usize,
    pub psi1_hat: RiskEstimate,
    pub psi2_hat: RiskEstimate,
    /// Closed-form bound `sqrt(alpha)` on the single-sample risk.
    pub psi2_bound: f64,
    /// `psi1_hat - psi2_hat - 3*(ci1 + ci2)`: the Monte Carlo-safe gap.
    pub gap_rhs: f64,
    pub tv_per_theta: [f64; 2],
    pub sup_tv: f64,
    /// True when `sup_tv` is the exact propagated value, false when it is an
    /// empirical lower bound.
    pub tv_exact: bool,
    pub verdict: GapVerdict,
}

/// Checks the randomization-criterion direction on a concrete instance: the
/// worst-hypothesis sampling TV must dominate the Bayes-risk gap of a fixed
/// estimator applied to the sampler's output versus a real sample.
///
/// Requires a sample-based estimator so the same decision kernel appears on
/// both sides of the gap. For the named samplers the TV side is exact (law
/// propagation plus the axis-aligned TV reduction); for custom samplers it
/// falls back to the one-sided empirical lower bound and the verdict can
/// only be `Holds` or `NotConclusive`.
#[allow(clippy::too_many_arguments)]
pub fn randomization_gap_report(
    sampler_spec: &SamplerSpec,
    estimator: &EstimatorSpec,
    pair: &HardInstancePair,
    n: usize,
    trials: usize,
    seed: u64,
    noise: NoiseKind,
) -> Result<GapReport> {
    if !estimator.is_sample_based() {
        return Err(Error::NotSampleBased {
            estimator: estimator.name(),
        });
    }
    let sampler = sampler_spec.build(pair.alpha())?;
    let psi1_hat = estimate_psi1_hat(
        sampler.as_ref(),
        estimator,
        pair,
        n,
        trials,
        child_seed(seed, Role::Risk, 1),
        noise,
    )?;
    let psi2_hat = single_sample_risk(estimator, pair, trials, child_seed(seed, Role::Risk, 2))?;
    let psi2_bound = psi2_upper(pair.alpha())?;
    let gap_rhs =
        psi1_hat.mean - psi2_hat.mean - 3.0 * (psi1_hat.ci_half_width + psi2_hat.ci_half_width);

    let mut tv_per_theta = [0.0f64; 2];
    let mut tv_exact = true;
    for theta in Theta::BOTH {
        let target = pair.target(theta);
        let oracle = GradientOracle::for_pair(pair, theta, noise);
        let exact = match sampler_spec.output_law(&target, &oracle.noise_covariance_diag(), n)? {
            Some(law) => {
                let target_law =
                    GaussianLaw::isotropic(target.mean().to_vec(), target.variance())?;
                match gaussian_tv_diag(&law, &target_law) {
                    Ok(tv) => Some(tv),
                    Err(Error::ExactTvUnavailable { .. }) => None,
                    Err(e) => return Err(e),
                }
            }
            None => None,
        };
        tv_per_theta[theta.index()] = match exact {
            Some(tv) => tv,
            None => {
                tv_exact = false;
                let tv_trials = trials.max(1000);
                let samples: Vec<Vec<f64>> = (0..tv_trials)
                    .into_par_iter()
                    .map(|k| {
                        let run_seed = child_seed(
                            child_seed(seed, Role::Tv, theta.index() as u64),
                            Role::Trial,
                            k as u64,
                        );
                        run_protocol(sampler.as_ref(), &oracle, n, run_seed).map(|t| t.sample)
                    })
                    .collect::<Result<_>>()?;
                empirical_tv_lower_bound(&samples, &target, 128)?
            }
        };
    }
    let sup_tv = tv_per_theta[0].max(tv_per_theta[1]);
    let verdict = if sup_tv >= gap_rhs {
        GapVerdict::Holds
    } else if tv_exact {
        GapVerdict::Violated
    } else {
        GapVerdict::NotConclusive
    };
    Ok(GapReport {
        sampler: sampler_spec.name(),
        estimator: estimator.name(),
        n,
        trials,
        psi1_hat,
        psi2_hat,
        psi2_bound,
        gap_rhs,
        tv_per_theta,
        sup_tv,
        tv_exact,
        verdict,
    })
}
