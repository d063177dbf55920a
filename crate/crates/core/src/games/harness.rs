use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::RandomSource;

/// Empirical distribution of a game outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialHistogram {
    pub n: usize,
    pub parameter: String,
    pub trials: u64,
    pub seed: u64,
    pub counts: BTreeMap<usize, u64>,
}

impl TrialHistogram {
    pub fn empty(n: usize, parameter: impl Into<String>, seed: u64) -> Self {
        TrialHistogram { n, parameter: parameter.into(), trials: 0, seed, counts: BTreeMap::new() }
    }

    pub fn record(&mut self, value: usize) {
        *self.counts.entry(value).or_insert(0) += 1;
        self.trials += 1;
    }

    /// Adds another histogram's counts; merging is associative and commutative.
    pub fn merge(mut self, other: &TrialHistogram) -> Self {
        for (&v, &c) in &other.counts {
            *self.counts.entry(v).or_insert(0) += c;
        }
        self.trials += other.trials;
        self
    }

    pub fn mean(&self) -> f64 {
        let sum: f64 = self.counts.iter().map(|(&v, &c)| v as f64 * c as f64).sum();
        sum / self.trials as f64
    }

    /// Unbiased sample variance.
    pub fn variance(&self) -> f64 {
        let mean = self.mean();
        let ss: f64 = self
            .counts
            .iter()
            .map(|(&v, &c)| c as f64 * (v as f64 - mean).powi(2))
            .sum();
        ss / (self.trials as f64 - 1.0)
    }
}

/// Runs `trials` independent trials across the rayon pool. Trial `i` draws
/// from a stream seeded by `derive_seed(seed, i)`, so the result does not
/// depend on thread count or scheduling.
pub fn run_trials<G>(n: usize, parameter: &str, generator: G, trials: u64, seed: u64) -> TrialHistogram
where
    G: Fn(&mut RandomSource) -> usize + Sync,
{
    let empty = || TrialHistogram::empty(n, parameter, seed);
    (0..trials)
        .into_par_iter()
        .fold(empty, |mut h, i| {
            h.record(generator(&mut RandomSource::for_trial(seed, i)));
            h
        })
        .reduce(empty, |a, b| a.merge(&b))
}

/// Single-threaded reference for [`run_trials`].
pub fn run_trials_serial<G>(n: usize, parameter: &str, generator: G, trials: u64, seed: u64) -> TrialHistogram
where
    G: Fn(&mut RandomSource) -> usize,
{
    let mut h = TrialHistogram::empty(n, parameter, seed);
    for i in 0..trials {
        h.record(generator(&mut RandomSource::for_trial(seed, i)));
    }
    h
}
