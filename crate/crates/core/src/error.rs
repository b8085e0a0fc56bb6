//! Error type shared by all modules.

use thiserror::Error;

/// Errors produced by model construction, protocol execution and analysis.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A vector had the wrong length for the target dimension.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A numeric parameter violated its constraint.
    #[error("invalid parameter {name} = {value}: must satisfy {constraint}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        constraint: &'static str,
    },

    /// The query budget is too small for the hard-instance scale
    /// (`lambda = sigma*sqrt(d)/(4*sqrt(n))` must stay <= 1/2).
    #[error(
        "query budget n = {n} violates n >= sigma^2*d/4 = {required} \
         (needed so the instance separation parameter stays <= 1/2)"
    )]
    BudgetTooSmall { n: f64, required: f64 },

    /// A covariance entry was negative (diagonal spec must be PSD).
    #[error("noise covariance entry {index} is negative ({value}): spec must be PSD")]
    NotPsd { index: usize, value: f64 },

    /// The noise covariance trace exceeds the oracle variance budget.
    #[error("noise covariance trace {trace} exceeds the variance budget sigma^2*d = {budget}")]
    BudgetExceeded { trace: f64, budget: f64 },

    /// KL is infinite: one law puts mass where the other has none.
    #[error(
        "absolute continuity failure on coordinate {index}: zero-variance \
         coordinate with unequal means"
    )]
    AbsoluteContinuity { index: usize },

    /// A covariance that must be positive definite had a non-positive entry.
    #[error("covariance entry {index} is not positive ({value})")]
    NotPositiveDefinite { index: usize, value: f64 },

    /// TV between the given diagonal Gaussian pair has no exact reduction
    /// implemented (laws must be axis-aligned with a single distinguished
    /// coordinate).
    #[error("exact TV unavailable: {reason}")]
    ExactTvUnavailable { reason: &'static str },

    /// An estimator that needs a transcript-level quantity was given a
    /// transcript that lacks it.
    #[error("transcript carries no mean estimate; required by estimator {estimator}")]
    MissingEstimate { estimator: &'static str },

    /// The estimator cannot be applied to a single raw sample.
    #[error("estimator {estimator} is transcript-based and cannot score a single real sample")]
    NotSampleBased { estimator: &'static str },

    /// Not enough Monte Carlo samples for the requested statistic.
    #[error("too few samples: got {got}, need at least {min}")]
    TooFewSamples { got: usize, min: usize },
}
