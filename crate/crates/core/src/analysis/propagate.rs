//! Exact output-law propagation for Langevin-type samplers on isotropic
//! Gaussian targets.
//!
//! The update `y' = (1 - eta*alpha)*y + eta*alpha*m - eta*xi + sqrt(2*eta)*w`
//! is affine in `y` with independent Gaussian noise, so if the iterate is
//! Gaussian with diagonal covariance it stays Gaussian with diagonal
//! covariance. That makes every TV curve computable without Monte Carlo.

use crate::analysis::gaussian::GaussianLaw;
use crate::error::Error;
use crate::model::IsotropicGaussianTarget;
use crate::samplers::StepSchedule;
use crate::Result;

/// Laws of the iterate at steps `0..=n`, plus a stability flag.
#[derive(Debug, Clone, PartialEq)]
pub struct LawSequence {
    pub laws: Vec<GaussianLaw>,
    /// False when any step had `|1 - eta*alpha| >= 1` (the mean recursion
    /// stops contracting and the covariance can diverge).
    pub stable: bool,
}

impl LawSequence {
    pub fn final_law(&self) -> &GaussianLaw {
        self.laws.last().expect("sequence includes the initial law")
    }
}

/// Propagates the exact Gaussian law of ULA/SGLD iterates for `n` steps.
///
/// Per step `t` with `eta = schedule.eta(t)` and `a = 1 - eta*alpha`:
/// `mean' = a*mean + eta*alpha*m` and
/// `var'_i = a^2*var_i + eta^2*noise_i + 2*eta`.
pub fn ula_law_propagate(
    target: &IsotropicGaussianTarget,
    noise_diag: &[f64],
    schedule: &StepSchedule,
    n: usize,
    init_mean: &[f64],
    init_var: &[f64],
) -> Result<LawSequence> {
    let d = target.dim();
    for v in [noise_diag.len(), init_mean.len(), init_var.len()] {
        if v != d {
            return Err(Error::DimensionMismatch { expected: d, got: v });
        }
    }
    for (index, &nv) in noise_diag.iter().enumerate() {
        if nv < 0.0 || !nv.is_finite() {
            return Err(Error::NotPsd { index, value: nv });
        }
    }
    let alpha = target.alpha();
    let m = target.mean();
    let mut mean = init_mean.to_vec();
    let mut var = init_var.to_vec();
    let mut laws = Vec::with_capacity(n + 1);
    laws.push(GaussianLaw::new(mean.clone(), var.clone())?);
    let mut stable = true;
    for t in 0..n {
        let eta = schedule.eta(t);
        // eta = 0 is allowed here (the law just stays put); sampler configs
        // demand strictly positive steps separately.
        if !(eta >= 0.0) || !eta.is_finite() {
            return Err(Error::InvalidParameter {
                name: "eta",
                value: eta,
                constraint: "eta >= 0",
            });
        }
        let a = 1.0 - eta * alpha;
        if a.abs() >= 1.0 {
            stable = false;
        }
        for i in 0..d {
            mean[i] = a * mean[i] + eta * alpha * m[i];
            var[i] = a * a * var[i] + eta * eta * noise_diag[i] + 2.0 * eta;
        }
        laws.push(GaussianLaw::new(mean.clone(), var.clone())?);
    }
    Ok(LawSequence { laws, stable })
}
