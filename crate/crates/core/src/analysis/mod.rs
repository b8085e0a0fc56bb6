//! Closed-form analysis: Gaussian KL/TV, the query-complexity bound chain,
//! and exact output-law propagation for linear samplers.

mod bounds;
mod gaussian;
mod propagate;

pub use bounds::{
    minimax_lower_bound, per_query_kl, pinsker_tv_bound, psi1_lower, psi2_upper,
    transcript_kl_bound, BoundReport, MinimaxBound,
};
pub use gaussian::{
    gaussian_kl, gaussian_tv_1d, gaussian_tv_diag, gaussian_tv_same_cov, normal_cdf,
    normal_quantile, GaussianLaw,
};
pub use propagate::{ula_law_propagate, LawSequence};
