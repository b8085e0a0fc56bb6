//! Stochastic gradient oracles with a total variance budget of `sigma^2*d`.

use rand_distr::{Distribution, StandardNormal};

use crate::error::Error;
use crate::model::{HardInstancePair, IsotropicGaussianTarget, Theta};
use crate::rng::StreamRng;
use crate::vecops;
use crate::Result;

/// Shape of the zero-mean Gaussian noise added to each gradient response.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoiseKind {
    /// No noise: responses equal the true gradient.
    Exact,
    /// Covariance `sigma^2 * I`; trace is exactly `sigma^2 * d`.
    IsotropicGaussian,
    /// The adversarial shape: variance `sigma^2 * d` on coordinate 1,
    /// zero elsewhere. Spends the whole budget on the one informative
    /// coordinate of the two-point instance.
    FirstCoordinate,
}

impl NoiseKind {
    pub fn name(self) -> &'static str {
        match self {
            NoiseKind::Exact => "exact",
            NoiseKind::IsotropicGaussian => "isotropic",
            NoiseKind::FirstCoordinate => "first-coordinate",
        }
    }
}

/// A conditional distribution over noisy gradients of one target's potential.
#[derive(Debug, Clone, PartialEq)]
pub struct GradientOracle {
    target: IsotropicGaussianTarget,
    noise_kind: NoiseKind,
    sigma: f64,
}

impl GradientOracle {
    pub fn new(target: IsotropicGaussianTarget, noise_kind: NoiseKind, sigma: f64) -> Result<Self> {
        if !(sigma >= 0.0) || !sigma.is_finite() {
            return Err(Error::InvalidParameter {
                name: "sigma",
                value: sigma,
                constraint: "sigma >= 0",
            });
        }
        Ok(Self {
            target,
            noise_kind,
            sigma,
        })
    }

    /// Oracle for hypothesis `theta` of a hard pair, with the pair's own
    /// noise scale.
    pub fn for_pair(pair: &HardInstancePair, theta: Theta, noise_kind: NoiseKind) -> Self {
        Self::new(pair.target(theta), noise_kind, pair.sigma())
            .expect("pair sigma validated at construction")
    }

    pub fn target(&self) -> &IsotropicGaussianTarget {
        &self.target
    }

    pub fn noise_kind(&self) -> NoiseKind {
        self.noise_kind
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn dim(&self) -> usize {
        self.target.dim()
    }

    /// Diagonal of the noise covariance this oracle adds.
    pub fn noise_covariance_diag(&self) -> Vec<f64> {
        let d = self.dim();
        match self.noise_kind {
            NoiseKind::Exact => vec![0.0; d],
            NoiseKind::IsotropicGaussian => vec![self.sigma * self.sigma; d],
            NoiseKind::FirstCoordinate => {
                let mut v = vec![0.0; d];
                v[0] = self.sigma * self.sigma * d as f64;
                v
            }
        }
    }

    /// One noisy gradient response `grad f(y) + xi`, with `xi` drawn from the
    /// configured noise shape. Consumes the stream deterministically.
    pub fn query(&self, y: &[f64], rng: &mut StreamRng) -> Result<Vec<f64>> {
        vecops::check_dim(self.dim(), y)?;
        let mut z = self.target.potential_grad(y)?;
        match self.noise_kind {
            NoiseKind::Exact => {}
            NoiseKind::IsotropicGaussian => {
                for zi in z.iter_mut() {
                    let w: f64 = StandardNormal.sample(rng);
                    *zi += self.sigma * w;
                }
            }
            NoiseKind::FirstCoordinate => {
                let sd = (self.sigma * self.sigma * self.dim() as f64).sqrt();
                let w: f64 = StandardNormal.sample(rng);
                z[0] += sd * w;
            }
        }
        Ok(z)
    }
}

/// Checks a diagonal noise covariance spec against the oracle contract:
/// entries must be nonnegative (PSD) and the trace must not exceed the
/// variance budget `sigma^2 * d`.
///
/// The trace comparison allows a 1e-9 relative slack so that covariances
/// assembled by summation (e.g. `d` copies of `sigma^2`) are not rejected
/// over rounding.
pub fn validate_oracle(noise_covariance_diag: &[f64], sigma: f64, d: usize) -> Result<()> {
    if noise_covariance_diag.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: noise_covariance_diag.len(),
        });
    }
    for (index, &value) in noise_covariance_diag.iter().enumerate() {
        if value < 0.0 {
            return Err(Error::NotPsd { index, value });
        }
    }
    let trace: f64 = noise_covariance_diag.iter().sum();
    let budget = sigma * sigma * d as f64;
    if trace > budget * (1.0 + 1e-9) {
        return Err(Error::BudgetExceeded { trace, budget });
    }
    Ok(())
}
