use std::thread;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dsu::DisjointSets;
use crate::error::{Error, Result};
use crate::exactmath::Rational;
use crate::reliability::split_range;

use super::params::EnsembleParams;

/// Name of the generator recorded in output metadata.
pub const RNG_ALGORITHM: &str = "ChaCha8 (rand_chacha 0.3), seed_from_u64(seed), stream = trial index";

/// Sample mean of the failure indicator with its standard error.
#[derive(Clone, Debug, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub trials: u64,
    pub seed: u64,
    pub failures: u64,
}

impl McEstimate {
    /// `(mean − reference) / std_error`; infinite when the error is zero
    /// and the mean misses the reference.
    pub fn z_score(&self, reference: f64) -> f64 {
        let diff = self.mean - reference;
        if self.std_error == 0.0 {
            if diff == 0.0 {
                0.0
            } else {
                diff.signum() * f64::INFINITY
            }
        } else {
            diff / self.std_error
        }
    }
}

pub fn epf_montecarlo(p: EnsembleParams, eps: &Rational, trials: u64, seed: u64) -> Result<McEstimate> {
    epf_montecarlo_with(p, eps, trials, seed, 1)
}

/// Draws `trials` graphs with independent edge failures. Trial `t` uses its
/// own generator stream `t`, so the estimate does not depend on `workers`.
pub fn epf_montecarlo_with(
    p: EnsembleParams,
    eps: &Rational,
    trials: u64,
    seed: u64,
    workers: usize,
) -> Result<McEstimate> {
    if trials == 0 {
        return Err(Error::Domain("Monte Carlo needs at least one trial".into()));
    }
    if !(eps > &Rational::zero() && *eps < 1) {
        return Err(Error::Domain(format!("edge failure probability {eps} must lie in (0, 1)")));
    }
    let eps = eps.to_f64();
    let pairs = p.pair_list();
    let run = |range: std::ops::Range<u64>| {
        let mut dsu = DisjointSets::new(p.k());
        let mut order: Vec<usize> = Vec::with_capacity(pairs.len());
        let mut failures = 0u64;
        for trial in range {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial);
            order.clear();
            order.extend(0..pairs.len());
            let (chosen, _) = order.partial_shuffle(&mut rng, p.n());
            dsu.reset();
            for &idx in chosen.iter() {
                let survives = !rng.gen_bool(eps);
                if survives {
                    dsu.union(pairs[idx].lo, pairs[idx].hi);
                }
            }
            // An unconnected draw leaves an unconnected survivor graph too.
            if dsu.components() > 1 {
                failures += 1;
            }
        }
        failures
    };
    let ranges = split_range(trials, workers);
    let failures: u64 = if ranges.len() == 1 {
        run(ranges[0].clone())
    } else {
        thread::scope(|s| {
            let handles: Vec<_> = ranges.into_iter().map(|r| s.spawn(|| run(r))).collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).sum()
        })
    };
    let t = trials as f64;
    let mean = failures as f64 / t;
    let std_error = if trials > 1 {
        let f = failures as f64;
        let variance = (f - f * f / t) / (t - 1.0);
        (variance.max(0.0) / t).sqrt()
    } else {
        0.0
    };
    Ok(McEstimate {
        mean,
        std_error,
        trials,
        seed,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed_and_workers() {
        let p = EnsembleParams::new(3, 3).unwrap();
        let eps = Rational::ratio(1, 3);
        let a = epf_montecarlo(p, &eps, 2000, 42).unwrap();
        let b = epf_montecarlo(p, &eps, 2000, 42).unwrap();
        assert_eq!(a, b);
        assert_eq!(epf_montecarlo_with(p, &eps, 2000, 42, 4).unwrap(), a);
        assert_ne!(epf_montecarlo(p, &eps, 2000, 43).unwrap().failures, 0);
    }

    #[test]
    fn rejects_bad_arguments() {
        let p = EnsembleParams::new(3, 3).unwrap();
        assert!(epf_montecarlo(p, &Rational::ratio(1, 2), 0, 1).is_err());
        assert!(epf_montecarlo(p, &Rational::zero(), 10, 1).is_err());
        assert!(epf_montecarlo(p, &Rational::one(), 10, 1).is_err());
    }

    #[test]
    fn standard_error_formula() {
        let p = EnsembleParams::new(4, 3).unwrap();
        let est = epf_montecarlo(p, &Rational::ratio(1, 2), 1000, 7).unwrap();
        let m = est.mean;
        let expected = (m * (1.0 - m) * 1000.0 / 999.0 / 1000.0).sqrt();
        assert!((est.std_error - expected).abs() < 1e-12);
    }
}
