//! Target-distribution family, potentials, the bounded loss, and the
//! adversarial two-point instance.
//!
//! Targets are isotropic Gaussians `N(m, I/alpha)`. Their potential (negative
//! log density up to an additive constant) is the quadratic
//! `f(y) = alpha/2 * ||y - m||^2`, which is simultaneously `alpha`-smooth and
//! `alpha`-strongly convex, so every member of the family is well conditioned.

use crate::error::Error;
use crate::vecops;
use crate::Result;

/// Hypothesis label for the two-point family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theta {
    One,
    Two,
}

impl Theta {
    pub const BOTH: [Theta; 2] = [Theta::One, Theta::Two];

    /// 0-based index, for per-hypothesis bookkeeping.
    pub fn index(self) -> usize {
        match self {
            Theta::One => 0,
            Theta::Two => 1,
        }
    }

    /// 1-based label, as stored on transcripts.
    pub fn label(self) -> u8 {
        self.index() as u8 + 1
    }
}

/// An isotropic Gaussian target `N(mean, I/alpha)`.
///
/// The covariance is never materialized; `alpha` (inverse variance) is both
/// the log-smoothness and the strong log-concavity constant of the potential.
#[derive(Debug, Clone, PartialEq)]
pub struct IsotropicGaussianTarget {
    mean: Vec<f64>,
    alpha: f64,
}

impl IsotropicGaussianTarget {
    pub fn new(mean: Vec<f64>, alpha: f64) -> Result<Self> {
        if mean.is_empty() {
            return Err(Error::InvalidParameter {
                name: "d",
                value: 0.0,
                constraint: "d >= 1",
            });
        }
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::InvalidParameter {
                name: "alpha",
                value: alpha,
                constraint: "alpha > 0",
            });
        }
        Ok(Self { mean, alpha })
    }

    pub fn dim(&self) -> usize {
        self.mean.len()
    }

    pub fn mean(&self) -> &[f64] {
        &self.mean
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Per-coordinate variance `1/alpha`.
    pub fn variance(&self) -> f64 {
        1.0 / self.alpha
    }

    /// Potential value `alpha/2 * ||y - mean||^2`.
    pub fn potential_value(&self, y: &[f64]) -> Result<f64> {
        vecops::check_dim(self.dim(), y)?;
        let sq: f64 = y
            .iter()
            .zip(&self.mean)
            .map(|(a, b)| (a - b) * (a - b))
            .sum();
        Ok(0.5 * self.alpha * sq)
    }

    /// Potential gradient `alpha * (y - mean)`; exact and deterministic.
    pub fn potential_grad(&self, y: &[f64]) -> Result<Vec<f64>> {
        vecops::check_dim(self.dim(), y)?;
        Ok(y.iter()
            .zip(&self.mean)
            .map(|(a, b)| self.alpha * (a - b))
            .collect())
    }
}

/// The bounded decision loss `min(alpha * ||t - target_mean||_2, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LossSpec {
    alpha: f64,
    target_mean: Vec<f64>,
}

impl LossSpec {
    pub fn new(alpha: f64, target_mean: Vec<f64>) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::InvalidParameter {
                name: "alpha",
                value: alpha,
                constraint: "alpha > 0",
            });
        }
        Ok(Self { alpha, target_mean })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn target_mean(&self) -> &[f64] {
        &self.target_mean
    }

    /// Loss of decision `t`; always in `[0, 1]`.
    pub fn eval(&self, t: &[f64]) -> Result<f64> {
        vecops::check_dim(self.target_mean.len(), t)?;
        let dist = vecops::dist2(t, &self.target_mean);
        Ok((self.alpha * dist).min(1.0))
    }
}

/// The two-point family `{N(+lambda/alpha e1, I/alpha), N(-lambda/alpha e1, I/alpha)}`
/// together with the scale parameters it was built from.
///
/// The means differ only in coordinate 1 and are `2*lambda/alpha` apart; all
/// oracle noise in the matching adversarial oracle sits on that coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct HardInstancePair {
    d: usize,
    sigma: f64,
    n: u64,
    lambda: f64,
    alpha: f64,
    m1: Vec<f64>,
    m2: Vec<f64>,
}

/// Largest admissible smoothness for a budget of `n` queries: `sigma^2*d/(256*n)`.
pub fn max_admissible_alpha(n: f64, d: usize, sigma: f64) -> f64 {
    sigma * sigma * d as f64 / (256.0 * n)
}

/// Separation scale `lambda = sigma*sqrt(d)/(4*sqrt(n))`.
pub fn lambda_for(n: f64, d: usize, sigma: f64) -> f64 {
    sigma * (d as f64).sqrt() / (4.0 * n.sqrt())
}

fn validate_budget(n: f64, d: usize, sigma: f64) -> Result<()> {
    if d == 0 {
        return Err(Error::InvalidParameter {
            name: "d",
            value: 0.0,
            constraint: "d >= 1",
        });
    }
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(Error::InvalidParameter {
            name: "sigma",
            value: sigma,
            constraint: "sigma > 0",
        });
    }
    if !(n >= 1.0) {
        return Err(Error::InvalidParameter {
            name: "n",
            value: n,
            constraint: "n >= 1",
        });
    }
    let required = sigma * sigma * d as f64 / 4.0;
    if n < required {
        return Err(Error::BudgetTooSmall { n, required });
    }
    Ok(())
}

/// Builds the canonical hard instance for budget `n`, dimension `d` and noise
/// scale `sigma`: `lambda = sigma*sqrt(d)/(4*sqrt(n))` and the boundary
/// smoothness `alpha = sigma^2*d/(256*n)` (largest admissible, so the
/// single-sample risk bound `sqrt(alpha)` is as large as the scale permits).
pub fn build_hard_instance(n: u64, d: usize, sigma: f64) -> Result<HardInstancePair> {
    let alpha = max_admissible_alpha(n as f64, d, sigma);
    build_hard_instance_with_alpha(n, d, sigma, alpha)
}

/// Same construction with an explicit smoothness `alpha <= sigma^2*d/(256*n)`.
pub fn build_hard_instance_with_alpha(
    n: u64,
    d: usize,
    sigma: f64,
    alpha: f64,
) -> Result<HardInstancePair> {
    validate_budget(n as f64, d, sigma)?;
    let alpha_max = max_admissible_alpha(n as f64, d, sigma);
    if !(alpha > 0.0) || alpha > alpha_max * (1.0 + 1e-12) {
        return Err(Error::InvalidParameter {
            name: "alpha",
            value: alpha,
            constraint: "0 < alpha <= sigma^2*d/(256*n)",
        });
    }
    let lambda = lambda_for(n as f64, d, sigma);
    debug_assert!(lambda <= 0.5 + 1e-15);
    let m11 = lambda / alpha;
    let mut m1 = vec![0.0; d];
    let mut m2 = vec![0.0; d];
    m1[0] = m11;
    m2[0] = -m11;
    // Mean-radius constraint ||m_theta|| <= 1/alpha, implied by lambda <= 1/2.
    assert!(
        crate::vecops::norm2(&m1) <= 1.0 / alpha * (1.0 + 1e-12),
        "mean radius {} exceeds 1/alpha = {}",
        m11,
        1.0 / alpha
    );
    Ok(HardInstancePair {
        d,
        sigma,
        n,
        lambda,
        alpha,
        m1,
        m2,
    })
}

impl HardInstancePair {
    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// Query budget the instance was built for.
    pub fn budget(&self) -> u64 {
        self.n
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn mean(&self, theta: Theta) -> &[f64] {
        match theta {
            Theta::One => &self.m1,
            Theta::Two => &self.m2,
        }
    }

    /// Euclidean separation of the two means: exactly `2*lambda/alpha`.
    pub fn mean_separation(&self) -> f64 {
        2.0 * self.lambda / self.alpha
    }

    /// Total oracle noise variance budget `sigma^2*d`.
    pub fn noise_budget(&self) -> f64 {
        self.sigma * self.sigma * self.d as f64
    }

    pub fn target(&self, theta: Theta) -> IsotropicGaussianTarget {
        IsotropicGaussianTarget::new(self.mean(theta).to_vec(), self.alpha)
            .expect("pair fields are validated at construction")
    }

    pub fn loss_spec(&self, theta: Theta) -> LossSpec {
        LossSpec::new(self.alpha, self.mean(theta).to_vec())
            .expect("pair fields are validated at construction")
    }
}
