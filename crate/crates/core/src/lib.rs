//! Simulation and analysis toolkit for sampling from log-concave targets
//! through a noisy-gradient oracle.
//!
//! The crate has three layers:
//!
//! * **Models and protocol** ([`model`], [`oracle`], [`protocol`]): isotropic
//!   Gaussian targets, the adversarial two-point instance, stochastic
//!   gradient oracles with a fixed variance budget, and the sequential
//!   query/response protocol that records a full [`protocol::Transcript`].
//! * **Samplers** ([`samplers`]): Langevin-style reference algorithms (ULA,
//!   step-decayed SGLD) and a gradient-averaging Gaussian-fit baseline, all
//!   behind the history-only [`protocol::Sampler`] interface.
//! * **Analysis** ([`analysis`], [`lecam`]): closed-form KL/TV computations,
//!   the query-complexity floor chain (per-query KL, transcript KL, Pinsker,
//!   Bayes-risk bounds, minimax floor), exact Gaussian law propagation for
//!   linear samplers, and Monte Carlo machinery for two-point testing
//!   experiments with distribution-free confidence intervals.
//!
//! Everything is deterministic given a 64-bit master seed; parallel code
//! derives independent child streams per trial so results do not depend on
//! scheduling (see [`rng`]).

pub mod analysis;
pub mod error;
pub mod lecam;
pub mod model;
pub mod oracle;
pub mod protocol;
pub mod rng;
pub mod samplers;

mod vecops;

pub use analysis::{
    gaussian_kl, gaussian_tv_1d, gaussian_tv_diag, gaussian_tv_same_cov, minimax_lower_bound,
    per_query_kl, pinsker_tv_bound, psi1_lower, psi2_upper, transcript_kl_bound, ula_law_propagate,
    BoundReport, GaussianLaw, LawSequence, MinimaxBound,
};
pub use error::Error;
pub use lecam::{
    empirical_tv_lower_bound, estimate_psi1_hat, estimate_psi2, first_coord_estimator,
    nearest_mean_test, randomization_gap_report, run_two_point_experiment, EstimatorSpec,
    GapReport, GapVerdict, RiskEstimate, TwoPointResult,
};
pub use model::{
    build_hard_instance, build_hard_instance_with_alpha, HardInstancePair, IsotropicGaussianTarget,
    LossSpec, Theta,
};
pub use oracle::{validate_oracle, GradientOracle, NoiseKind};
pub use protocol::{run_protocol, History, Sampler, Transcript};
pub use samplers::{
    averaging_baseline, run_sgld, ula_step, AveragingBaseline, InitialDistribution, SamplerSpec,
    Sgld, SgldConfig, StepSchedule, Ula, UlaConfig,
};

/// Result alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
