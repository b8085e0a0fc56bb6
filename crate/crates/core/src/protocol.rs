//! The sequential query/response protocol between a sampler and a gradient
//! oracle.
//!
//! One run: draw `y0` from the sampler's initial distribution, then for each
//! round query the oracle at the current point and let the sampler pick the
//! next point from the full history. After `n` responses the sampler produces
//! the final sample `y_n` (and, if it keeps one, a mean estimate). Everything
//! that happened is recorded in a [`Transcript`].
//!
//! Randomness discipline: the sampler and the oracle draw from disjoint child
//! streams of the master seed, one per (role, round). Changing how a sampler
//! uses its own stream can never perturb the oracle noise of the same run.

use std::io::Write;

use crate::error::Error;
use crate::oracle::GradientOracle;
use crate::rng::{child_stream, Role, StreamRng};
use crate::Result;

/// Read-only view of the interaction so far: `queries[i]` was answered by
/// `responses[i]`. This is the only run state a sampler ever sees — the
/// oracle, its noise shape and the hidden hypothesis are not reachable
/// through it.
#[derive(Debug, Clone, Copy)]
pub struct History<'a> {
    pub queries: &'a [Vec<f64>],
    pub responses: &'a [Vec<f64>],
}

impl<'a> History<'a> {
    pub fn rounds(&self) -> usize {
        self.queries.len()
    }

    pub fn last_query(&self) -> &'a [f64] {
        self.queries.last().expect("history is non-empty")
    }

    pub fn last_response(&self) -> &'a [f64] {
        self.responses.last().expect("history is non-empty")
    }
}

/// A gradient-based sampling algorithm: an initial distribution plus a
/// history-dependent rule for the next query point and the final sample.
///
/// Implementations must be deterministic functions of `(history, rng)`; all
/// randomness comes from the provided stream.
pub trait Sampler: Send + Sync {
    /// Draw the initial query point `y0`.
    fn initial_point(&self, d: usize, rng: &mut StreamRng) -> Vec<f64>;

    /// Choose the next query point from the history (called with `i >= 1`
    /// rounds recorded).
    fn next_query(&self, history: History<'_>, rng: &mut StreamRng) -> Vec<f64>;

    /// Produce the final sample after all rounds. Defaults to one more step
    /// of the query rule, which is the natural choice for iterative samplers.
    fn final_sample(&self, history: History<'_>, rng: &mut StreamRng) -> Vec<f64> {
        self.next_query(history, rng)
    }

    /// Mean estimate derived from the run, when the algorithm keeps one.
    fn mean_estimate(&self, _history: History<'_>, _sample: &[f64]) -> Option<Vec<f64>> {
        None
    }
}

impl<S: Sampler + ?Sized> Sampler for &S {
    fn initial_point(&self, d: usize, rng: &mut StreamRng) -> Vec<f64> {
        (**self).initial_point(d, rng)
    }
    fn next_query(&self, history: History<'_>, rng: &mut StreamRng) -> Vec<f64> {
        (**self).next_query(history, rng)
    }
    fn final_sample(&self, history: History<'_>, rng: &mut StreamRng) -> Vec<f64> {
        (**self).final_sample(history, rng)
    }
    fn mean_estimate(&self, history: History<'_>, sample: &[f64]) -> Option<Vec<f64>> {
        (**self).mean_estimate(history, sample)
    }
}

/// Complete record of one protocol run.
#[derive(Debug, Clone, PartialEq)]
pub struct Transcript {
    pub queries: Vec<Vec<f64>>,
    pub responses: Vec<Vec<f64>>,
    pub sample: Vec<f64>,
    pub estimate: Option<Vec<f64>>,
    pub seed: u64,
    /// Hypothesis label when the run was part of a two-point experiment.
    pub theta: Option<u8>,
}

impl Transcript {
    pub fn rounds(&self) -> usize {
        self.queries.len()
    }

    pub fn dim(&self) -> usize {
        self.sample.len()
    }

    /// Debug dump: header `round,y0..y{d-1},z0..z{d-1}`, one row per round,
    /// plus a final row holding the sample in the `y` columns with empty `z`
    /// columns.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        let d = self.dim();
        let mut header = String::from("round");
        for i in 0..d {
            header.push_str(&format!(",y{i}"));
        }
        for i in 0..d {
            header.push_str(&format!(",z{i}"));
        }
        writeln!(w, "{header}")?;
        for (round, (y, z)) in self.queries.iter().zip(&self.responses).enumerate() {
            let ys: Vec<String> = y.iter().map(|v| format!("{v:.16e}")).collect();
            let zs: Vec<String> = z.iter().map(|v| format!("{v:.16e}")).collect();
            writeln!(w, "{round},{},{}", ys.join(","), zs.join(","))?;
        }
        let ss: Vec<String> = self.sample.iter().map(|v| format!("{v:.16e}")).collect();
        let empties = vec![String::new(); d];
        writeln!(w, "{},{},{}", self.rounds(), ss.join(","), empties.join(","))?;
        Ok(())
    }
}

/// Runs the protocol for `n` rounds and records the transcript.
///
/// `n = 0` degenerates to drawing `y0` and returning it as the sample with an
/// empty query list.
pub fn run_protocol<S: Sampler + ?Sized>(
    sampler: &S,
    oracle: &GradientOracle,
    n: usize,
    seed: u64,
) -> Result<Transcript> {
    let d = oracle.dim();
    let mut init_rng = child_stream(seed, Role::Init, 0);
    let y0 = sampler.initial_point(d, &mut init_rng);
    if y0.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: y0.len(),
        });
    }

    let mut queries: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut responses: Vec<Vec<f64>> = Vec::with_capacity(n);

    if n == 0 {
        let estimate = sampler.mean_estimate(
            History {
                queries: &queries,
                responses: &responses,
            },
            &y0,
        );
        return Ok(Transcript {
            queries,
            responses,
            sample: y0,
            estimate,
            seed,
            theta: None,
        });
    }

    let mut y = y0;
    let mut sample = Vec::new();
    for i in 0..n {
        let mut oracle_rng = child_stream(seed, Role::Oracle, i as u64);
        let z = oracle.query(&y, &mut oracle_rng)?;
        queries.push(std::mem::take(&mut y));
        responses.push(z);
        let history = History {
            queries: &queries,
            responses: &responses,
        };
        let mut sampler_rng = child_stream(seed, Role::Sampler, (i + 1) as u64);
        let next = if i + 1 < n {
            sampler.next_query(history, &mut sampler_rng)
        } else {
            sampler.final_sample(history, &mut sampler_rng)
        };
        if next.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: next.len(),
            });
        }
        if i + 1 < n {
            y = next;
        } else {
            sample = next;
        }
    }

    let estimate = sampler.mean_estimate(
        History {
            queries: &queries,
            responses: &responses,
        },
        &sample,
    );
    Ok(Transcript {
        queries,
        responses,
        sample,
        estimate,
        seed,
        theta: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::IsotropicGaussianTarget;
    use crate::oracle::NoiseKind;

    /// Queries a fixed point forever; outputs the last response.
    struct FixedPoint {
        point: Vec<f64>,
    }

    impl Sampler for FixedPoint {
        fn initial_point(&self, _d: usize, _rng: &mut StreamRng) -> Vec<f64> {
            self.point.clone()
        }
        fn next_query(&self, _history: History<'_>, _rng: &mut StreamRng) -> Vec<f64> {
            self.point.clone()
        }
        fn final_sample(&self, history: History<'_>, _rng: &mut StreamRng) -> Vec<f64> {
            history.last_response().to_vec()
        }
    }

    fn exact_oracle() -> GradientOracle {
        let target = IsotropicGaussianTarget::new(vec![2.0, -1.0], 0.5).unwrap();
        GradientOracle::new(target, NoiseKind::Exact, 1.0).unwrap()
    }

    #[test]
    fn zero_rounds_returns_initial_point() {
        let sampler = FixedPoint {
            point: vec![3.0, 4.0],
        };
        let t = run_protocol(&sampler, &exact_oracle(), 0, 99).unwrap();
        assert!(t.queries.is_empty());
        assert!(t.responses.is_empty());
        assert_eq!(t.sample, vec![3.0, 4.0]);
    }

    #[test]
    fn deterministic_sampler_with_exact_oracle_is_deterministic() {
        let sampler = FixedPoint {
            point: vec![3.0, 4.0],
        };
        let oracle = exact_oracle();
        let t = run_protocol(&sampler, &oracle, 5, 1).unwrap();
        // Responses are the exact gradient at the fixed point.
        let g = oracle.target().potential_grad(&[3.0, 4.0]).unwrap();
        assert_eq!(t.rounds(), 5);
        for z in &t.responses {
            assert_eq!(z, &g);
        }
        assert_eq!(t.sample, g);
    }

    #[test]
    fn replay_is_bit_exact() {
        let sampler = crate::samplers::Ula::new(crate::samplers::UlaConfig::new(0.05).unwrap());
        let target = IsotropicGaussianTarget::new(vec![0.0, 0.0, 0.0], 1.0).unwrap();
        let oracle = GradientOracle::new(target, NoiseKind::IsotropicGaussian, 1.0).unwrap();
        let a = run_protocol(&sampler, &oracle, 20, 4242).unwrap();
        let b = run_protocol(&sampler, &oracle, 20, 4242).unwrap();
        assert_eq!(a, b);
        let c = run_protocol(&sampler, &oracle, 20, 4243).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn sampler_sees_only_history() {
        // Probe: assert the sampler interface exposes exactly the recorded
        // query/response pairs, nothing else, at every round.
        struct Probe;
        impl Sampler for Probe {
            fn initial_point(&self, d: usize, _rng: &mut StreamRng) -> Vec<f64> {
                vec![0.0; d]
            }
            fn next_query(&self, history: History<'_>, _rng: &mut StreamRng) -> Vec<f64> {
                assert_eq!(history.queries.len(), history.responses.len());
                assert!(history.rounds() >= 1);
                history.last_query().to_vec()
            }
        }
        run_protocol(&Probe, &exact_oracle(), 7, 5).unwrap();
    }

    #[test]
    fn csv_dump_has_expected_shape() {
        let sampler = FixedPoint {
            point: vec![1.0, 2.0],
        };
        let t = run_protocol(&sampler, &exact_oracle(), 3, 0).unwrap();
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "round,y0,y1,z0,z1");
        assert_eq!(lines.len(), 1 + 3 + 1);
        assert!(lines[4].starts_with("3,"));
    }
}
