use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use super::{GameError, TrialHistogram};
use crate::asymptotics::gaussian_cdf;
use crate::enumeration::DistributionTable;

/// Anything that can be viewed as a probability distribution on integers.
pub trait Normalized {
    fn probabilities(&self) -> Result<BTreeMap<usize, f64>, GameError>;
}

impl Normalized for TrialHistogram {
    fn probabilities(&self) -> Result<BTreeMap<usize, f64>, GameError> {
        if self.trials == 0 {
            return Err(GameError::EmptyHistogram);
        }
        let t = self.trials as f64;
        Ok(self.counts.iter().map(|(&v, &c)| (v, c as f64 / t)).collect())
    }
}

impl Normalized for DistributionTable {
    fn probabilities(&self) -> Result<BTreeMap<usize, f64>, GameError> {
        if self.total.is_zero() {
            return Err(GameError::EmptyHistogram);
        }
        Ok(DistributionTable::probabilities(self))
    }
}

/// Total variation distance: half the L1 distance.
pub fn tv_distance(a: &impl Normalized, b: &impl Normalized) -> Result<f64, GameError> {
    let (pa, pb) = (a.probabilities()?, b.probabilities()?);
    let support: BTreeSet<usize> = pa.keys().chain(pb.keys()).copied().collect();
    let l1: f64 = support
        .iter()
        .map(|v| (pa.get(v).unwrap_or(&0.0) - pb.get(v).unwrap_or(&0.0)).abs())
        .sum();
    Ok(0.5 * l1)
}

/// Pearson goodness-of-fit result.
#[derive(Debug, Clone, PartialEq)]
pub struct ChiSquare {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
    /// Cells after pooling.
    pub cells: usize,
}

impl ChiSquare {
    /// Accept unless the fit is rejected at level `alpha`.
    pub fn passes(&self, alpha: f64) -> bool {
        self.p_value >= alpha
    }
}

/// Pearson chi-square of an empirical histogram against an exact table.
/// Adjacent cells (in value order) are pooled until each has expected count
/// at least 5; a short tail joins the last pooled cell.
pub fn chi_square(h: &TrialHistogram, exact: &DistributionTable) -> Result<ChiSquare, GameError> {
    if h.trials == 0 {
        return Err(GameError::EmptyHistogram);
    }
    let probs = Normalized::probabilities(exact)?;
    if let Some(&v) = h.counts.keys().find(|v| probs.get(v).is_none_or(|&p| p == 0.0)) {
        return Err(GameError::SupportMismatch(v));
    }
    let t = h.trials as f64;
    let mut cells: Vec<(f64, f64)> = Vec::new();
    let (mut obs, mut exp) = (0.0, 0.0);
    for (v, p) in &probs {
        obs += *h.counts.get(v).unwrap_or(&0) as f64;
        exp += p * t;
        if exp >= 5.0 {
            cells.push((obs, exp));
            obs = 0.0;
            exp = 0.0;
        }
    }
    if exp > 0.0 || obs > 0.0 {
        match cells.last_mut() {
            Some(last) => {
                last.0 += obs;
                last.1 += exp;
            }
            None => cells.push((obs, exp)),
        }
    }
    let statistic: f64 = cells.iter().map(|(o, e)| (o - e).powi(2) / e).sum();
    let dof = cells.len().saturating_sub(1);
    let p_value = if dof == 0 {
        1.0
    } else {
        let dist = ChiSquared::new(dof as f64).expect("positive degrees of freedom");
        1.0 - dist.cdf(statistic)
    };
    Ok(ChiSquare { statistic, dof, p_value, cells: cells.len() })
}

/// Kolmogorov–Smirnov distance between an integer-valued histogram and a
/// normal law, comparing CDFs at the support points with a half-unit
/// continuity correction.
pub fn ks_discrete_normal(h: &TrialHistogram, mean: f64, sd: f64) -> Result<f64, GameError> {
    if h.trials == 0 {
        return Err(GameError::EmptyHistogram);
    }
    let (lo, hi) = match (h.counts.keys().next(), h.counts.keys().next_back()) {
        (Some(&lo), Some(&hi)) => (lo, hi),
        _ => return Err(GameError::EmptyHistogram),
    };
    let t = h.trials as f64;
    let mut cum = 0u64;
    let mut worst: f64 = gaussian_cdf((lo as f64 - 0.5 - mean) / sd);
    for v in lo..=hi {
        cum += h.counts.get(&v).copied().unwrap_or(0);
        let model = gaussian_cdf((v as f64 + 0.5 - mean) / sd);
        worst = worst.max((cum as f64 / t - model).abs());
    }
    Ok(worst)
}
