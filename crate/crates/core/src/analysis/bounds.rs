//! The closed-form bound chain for the two-point instance: per-query KL,
//! transcript KL, the Pinsker TV bound, the two Bayes-risk bounds, and the
//! minimax sampling floor.
//!
//! Budgets are real-valued here: the formulas are algebraic in `n` and the
//! canonical grids include fractional boundary points. Protocol execution
//! (which needs an integer round count) lives elsewhere.

use crate::error::Error;
use crate::model::{self, HardInstancePair};
use crate::Result;

/// KL divergence contributed by a single oracle response, `2*lambda^2/(sigma^2*d)`.
///
/// Independent of the query point: the two potentials' gradients differ by
/// the constant `alpha*(m2 - m1)`, so every query is equally informative.
pub fn per_query_kl(pair: &HardInstancePair) -> f64 {
    per_query_kl_scalar(pair.lambda(), pair.sigma(), pair.dim() as f64)
}

fn per_query_kl_scalar(lambda: f64, sigma: f64, d: f64) -> f64 {
    2.0 * lambda * lambda / (sigma * sigma * d)
}

/// Transcript KL bound after `n` responses: `n * per_query_kl`.
///
/// For this instance the chain-rule bound is an equality for every
/// algorithm, adaptive or not, because the per-query divergence is constant.
pub fn transcript_kl_bound(n: f64, pair: &HardInstancePair) -> f64 {
    n * per_query_kl(pair)
}

/// Pinsker: TV <= sqrt(KL/2), clamped to 1.
pub fn pinsker_tv_bound(kl: f64) -> Result<f64> {
    if !(kl >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "kl",
            value: kl,
            constraint: "kl >= 0",
        });
    }
    Ok((kl / 2.0).sqrt().min(1.0))
}

/// Lower bound on the sequential-estimation Bayes risk:
/// `lambda * (1 - lambda*sqrt(n)/(sigma*sqrt(d)))`, floored at 0.
pub fn psi1_lower(pair: &HardInstancePair, n: f64) -> f64 {
    psi1_lower_scalar(pair.lambda(), pair.sigma(), pair.dim() as f64, n)
}

fn psi1_lower_scalar(lambda: f64, sigma: f64, d: f64, n: f64) -> f64 {
    (lambda * (1.0 - lambda * n.sqrt() / (sigma * d.sqrt()))).max(0.0)
}

/// Upper bound on the single-sample Bayes risk: `sqrt(alpha)`.
pub fn psi2_upper(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::InvalidParameter {
            name: "alpha",
            value: alpha,
            constraint: "alpha > 0",
        });
    }
    Ok(alpha.sqrt())
}

/// The minimax sampling floor and the stronger intermediate it is derived
/// from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinimaxBound {
    /// `(sigma/16) * sqrt(d/n)`.
    pub floor: f64,
    /// `(3*sigma/16) * sqrt(d/n) - sqrt(alpha)` at the boundary smoothness.
    pub intermediate: f64,
}

/// Minimax TV floor for budget `n`, dimension `d`, noise scale `sigma`.
///
/// Requires `n >= sigma^2*d/4`; uses the boundary smoothness
/// `alpha = sigma^2*d/(256*n)` for the intermediate value.
pub fn minimax_lower_bound(n: f64, d: usize, sigma: f64) -> Result<MinimaxBound> {
    let required = sigma * sigma * d as f64 / 4.0;
    if !(n >= required) {
        return Err(Error::BudgetTooSmall { n, required });
    }
    let scale = sigma * (d as f64 / n).sqrt();
    let alpha = model::max_admissible_alpha(n, d, sigma);
    Ok(MinimaxBound {
        floor: scale / 16.0,
        intermediate: 3.0 * scale / 16.0 - alpha.sqrt(),
    })
}

/// Every closed-form quantity of the bound chain for one `(n, d, sigma, alpha)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub n: f64,
    pub d: usize,
    pub sigma: f64,
    pub alpha: f64,
    pub lambda: f64,
    pub per_query_kl: f64,
    pub transcript_kl_bound: f64,
    pub tv_bound: f64,
    pub psi1_lower: f64,
    pub psi2_upper: f64,
    pub minimax_lower: f64,
    pub minimax_intermediate: f64,
}

impl BoundReport {
    /// Computes the full chain. `alpha` defaults to the boundary value
    /// `sigma^2*d/(256*n)`; an explicit override must stay admissible.
    pub fn new(n: f64, d: usize, sigma: f64, alpha: Option<f64>) -> Result<Self> {
        let bound = minimax_lower_bound(n, d, sigma)?;
        let alpha_max = model::max_admissible_alpha(n, d, sigma);
        let alpha = match alpha {
            None => alpha_max,
            Some(a) => {
                if !(a > 0.0) || a > alpha_max * (1.0 + 1e-12) {
                    return Err(Error::InvalidParameter {
                        name: "alpha",
                        value: a,
                        constraint: "0 < alpha <= sigma^2*d/(256*n)",
                    });
                }
                a
            }
        };
        let lambda = model::lambda_for(n, d, sigma);
        let df = d as f64;
        let pq = per_query_kl_scalar(lambda, sigma, df);
        let kl = n * pq;
        let tv = pinsker_tv_bound(kl)?;
        let scale = sigma * (df / n).sqrt();
        Ok(Self {
            n,
            d,
            sigma,
            alpha,
            lambda,
            per_query_kl: pq,
            transcript_kl_bound: kl,
            tv_bound: tv,
            psi1_lower: psi1_lower_scalar(lambda, sigma, df, n),
            psi2_upper: psi2_upper(alpha)?,
            minimax_lower: bound.floor,
            minimax_intermediate: 3.0 * scale / 16.0 - alpha.sqrt(),
        })
    }

    pub fn for_pair(pair: &HardInstancePair) -> Result<Self> {
        Self::new(
            pair.budget() as f64,
            pair.dim(),
            pair.sigma(),
            Some(pair.alpha()),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::build_hard_instance;
    use approx::assert_relative_eq;

    #[test]
    fn per_query_kl_examples() {
        // lambda = 1/2, sigma = 1, d = 4 -> 2*(1/4)/4 = 0.125.
        let pair = build_hard_instance(1, 4, 1.0).unwrap();
        assert_eq!(pair.lambda(), 0.5);
        assert_relative_eq!(per_query_kl(&pair), 0.125, epsilon = 1e-15);
    }

    #[test]
    fn per_query_kl_matches_gaussian_kl_on_coordinate_one() {
        use crate::analysis::gaussian_kl;
        use crate::model::Theta;
        use crate::oracle::{GradientOracle, NoiseKind};
        use rand::Rng;

        let pair = build_hard_instance(100, 8, 1.3).unwrap();
        let o1 = GradientOracle::for_pair(&pair, Theta::One, NoiseKind::FirstCoordinate);
        let o2 = GradientOracle::for_pair(&pair, Theta::Two, NoiseKind::FirstCoordinate);
        let noise = o1.noise_covariance_diag();
        let mut rng = crate::rng::child_stream(1, crate::rng::Role::Trial, 0);
        for _ in 0..100 {
            let y: Vec<f64> = (0..8).map(|_| rng.random::<f64>() * 10.0 - 5.0).collect();
            let g1 = o1.target().potential_grad(&y).unwrap();
            let g2 = o2.target().potential_grad(&y).unwrap();
            // Restricted to coordinate 1: the remaining coordinates have no
            // noise and identical means, so they contribute nothing.
            let kl = gaussian_kl(&g1[..1], &noise[..1], &g2[..1], &noise[..1]).unwrap();
            assert_relative_eq!(kl, per_query_kl(&pair), max_relative = 1e-10);
            // The full-vector form agrees under the dead-coordinate
            // convention.
            let kl_full = gaussian_kl(&g1, &noise, &g2, &noise).unwrap();
            assert_relative_eq!(kl_full, per_query_kl(&pair), max_relative = 1e-10);
        }
    }

    #[test]
    fn transcript_bound_is_budget_free_at_canonical_lambda() {
        for (n, d, sigma) in [(25u64, 100usize, 1.0), (4096, 64, 2.0), (640, 16, 0.5)] {
            let pair = build_hard_instance(n, d, sigma).unwrap();
            assert_relative_eq!(
                transcript_kl_bound(n as f64, &pair),
                0.125,
                max_relative = 1e-12
            );
        }
        let pair = build_hard_instance(32, 8, 1.0).unwrap();
        assert_eq!(transcript_kl_bound(0.0, &pair), 0.0);
    }

    #[test]
    fn pinsker_examples() {
        assert_eq!(pinsker_tv_bound(0.0).unwrap(), 0.0);
        assert_relative_eq!(pinsker_tv_bound(0.125).unwrap(), 0.25, epsilon = 1e-15);
        assert_eq!(pinsker_tv_bound(50.0).unwrap(), 1.0);
        assert!(pinsker_tv_bound(-0.1).is_err());
    }

    #[test]
    fn psi1_lower_examples() {
        let pair = build_hard_instance(400, 100, 1.0).unwrap();
        // Canonical lambda: psi1 >= (3/4) * lambda.
        assert_relative_eq!(
            psi1_lower(&pair, 400.0),
            0.75 * pair.lambda(),
            max_relative = 1e-15
        );
        assert_relative_eq!(psi1_lower(&pair, 400.0), 0.09375, max_relative = 1e-15);
        // Large n floors at zero.
        assert_eq!(psi1_lower(&pair, 1e9), 0.0);
    }

    #[test]
    fn psi2_examples() {
        assert_eq!(psi2_upper(1.0).unwrap(), 1.0);
        assert_relative_eq!(
            psi2_upper(9.765625e-4).unwrap(),
            0.03125,
            epsilon = 1e-15
        );
        assert_relative_eq!(psi2_upper(1.0 / 64.0).unwrap(), 0.125, epsilon = 1e-15);
        assert!(psi2_upper(0.0).is_err());
    }

    #[test]
    fn minimax_examples() {
        let b = minimax_lower_bound(400.0, 100, 1.0).unwrap();
        assert_relative_eq!(b.floor, 0.03125, epsilon = 1e-15);
        // Boundary budget with sigma = 1: constant-accuracy regime, floor 1/8.
        let b = minimax_lower_bound(25.0, 100, 1.0).unwrap();
        assert_relative_eq!(b.floor, 0.125, epsilon = 1e-15);
        // Halving rate: doubling n divides by sqrt(2) exactly.
        let b1 = minimax_lower_bound(512.0, 64, 1.0).unwrap();
        let b2 = minimax_lower_bound(1024.0, 64, 1.0).unwrap();
        assert_relative_eq!(b1.floor / b2.floor, 2f64.sqrt(), epsilon = 1e-15);
        assert!(minimax_lower_bound(24.0, 100, 1.0).is_err());
    }

    #[test]
    fn report_is_internally_consistent() {
        let r = BoundReport::new(400.0, 100, 1.0, None).unwrap();
        assert_relative_eq!(r.tv_bound, (r.transcript_kl_bound / 2.0).sqrt(), epsilon = 1e-15);
        assert!(r.psi1_lower - r.psi2_upper <= 1.0);
        // At boundary alpha the chain gives intermediate >= floor with slack
        // exactly floor.
        assert_relative_eq!(
            r.minimax_intermediate - r.minimax_lower,
            r.minimax_lower,
            max_relative = 1e-12
        );
        assert!(r.minimax_lower <= r.psi1_lower - r.psi2_upper + 1e-15);
    }

    #[test]
    fn report_alpha_override() {
        let r = BoundReport::new(400.0, 100, 1.0, Some(1e-4)).unwrap();
        assert_eq!(r.alpha, 1e-4);
        assert!(BoundReport::new(400.0, 100, 1.0, Some(1.0)).is_err());
    }
}
