//! Limiting constants of the independence, path-cover and family games,
//! computed by fixed-point iteration, plus a Monte-Carlo central-limit check.
//!
//! Numerics are generic over the float type; [`crate::Constants`] and the
//! other root aliases fix it to `f64`.

use num_traits::{Float, FromPrimitive};
use serde::Serialize;
use thiserror::Error;

use crate::games::{dice_trial, ks_discrete_normal, run_trials, TrialHistogram};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum FixedPointError {
    #[error("t - g(t) does not change sign on [0, 1]")]
    NoSignChange,
    #[error("fixed-point residual did not reach tolerance")]
    NotConverged,
}

fn c<T: FromPrimitive>(x: f64) -> T {
    T::from_f64(x).expect("constant representable")
}

/// Residual target for [`solve_fixed_point`]: 32 ulps at 1.
pub fn fixed_point_tolerance<T: Float>() -> T {
    T::epsilon() * T::from(32).unwrap()
}

/// Solves `t = g(t)` on `[0, 1]` by bisection on `t - g(t)`, then polishes
/// with Newton steps on a central-difference derivative.
pub fn solve_fixed_point<T, G>(g: G) -> Result<T, FixedPointError>
where
    T: Float + FromPrimitive,
    G: Fn(T) -> T,
{
    let f = |t: T| t - g(t);
    let (mut lo, mut hi) = (T::zero(), T::one());
    let (flo, fhi) = (f(lo), f(hi));
    if flo > T::zero() || fhi < T::zero() {
        return Err(FixedPointError::NoSignChange);
    }
    let two = c::<T>(2.0);
    for _ in 0..200 {
        let mid = (lo + hi) / two;
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) <= T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut t = if f(lo).abs() <= f(hi).abs() { lo } else { hi };
    let h = T::epsilon().sqrt();
    for _ in 0..8 {
        let slope = (f(t + h) - f(t - h)) / (two * h);
        if slope == T::zero() || !slope.is_finite() {
            break;
        }
        let next = t - f(t) / slope;
        if f(next).abs().partial_cmp(&f(t).abs()) != Some(std::cmp::Ordering::Less) {
            break;
        }
        t = next;
    }
    if f(t).abs() <= fixed_point_tolerance::<T>() {
        Ok(t)
    } else {
        Err(FixedPointError::NotConverged)
    }
}

/// Standard normal CDF, `erfc(-x / sqrt 2) / 2`.
pub fn gaussian_cdf<T: Float + FromPrimitive>(x: T) -> T {
    let xf = x.to_f64().expect("finite float");
    c(0.5 * statrs::function::erf::erfc(-xf / std::f64::consts::SQRT_2))
}

/// Family means of `alpha / n` in the large-`n` limit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FamilyMeans<T> {
    /// Uniform labelled trees: `t = exp(-t)`.
    pub uniform: T,
    /// Full binary trees: `t = 1/2 + (1 - t)^2 / 2`.
    pub full_binary: T,
    /// Binary trees with left/right children: `t = (1 - t/2)^2`.
    pub binary_lr: T,
    /// Plane trees: `t = 1 / (1 + t)`.
    pub plane: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstantsReport<T> {
    /// Omega constant, `rho = exp(-rho)`.
    pub rho: T,
    /// Limiting variance of `alpha / sqrt(n)`: `(rho - rho^2 - rho^3) / (1 + rho)^2`.
    pub sigma2: T,
    pub family_means: FamilyMeans<T>,
    /// Limiting variance of `alpha / n` for full binary trees, per vertex.
    pub full_binary_variance_coeff: T,
    /// Root of `t = (1 + t) exp(-t)`.
    pub t0: T,
    /// Limiting path cover number per vertex, `1 - (2 - (t0 + 2) exp(-t0))`.
    pub path_cover_coeff: T,
}

impl<T: Float + FromPrimitive> ConstantsReport<T> {
    /// `(name, value)` pairs in a fixed order.
    pub fn entries(&self) -> Vec<(&'static str, T)> {
        vec![
            ("rho", self.rho),
            ("sigma2", self.sigma2),
            ("mean_uniform", self.family_means.uniform),
            ("mean_full_binary", self.family_means.full_binary),
            ("mean_binary_lr", self.family_means.binary_lr),
            ("mean_plane", self.family_means.plane),
            ("full_binary_variance_coeff", self.full_binary_variance_coeff),
            ("t0", self.t0),
            ("path_cover_coeff", self.path_cover_coeff),
        ]
    }
}

/// Inverse variance per unit of `m` of the full-binary count, from the
/// discrete log-second-derivative of either factorial term.
pub fn full_binary_precision<T: Float + FromPrimitive>(m: T, alpha: T) -> T {
    let (two, three, four, nine) = (c::<T>(2.0), c::<T>(3.0), c::<T>(4.0), c::<T>(9.0));
    T::one() / (alpha - m) + four / (two * alpha - two * m) + nine / (four * m - three * alpha)
        - T::one() / alpha
        - T::one() / (two * m - alpha)
}

pub fn constants<T: Float + FromPrimitive>() -> Result<ConstantsReport<T>, FixedPointError> {
    let (half, one, two) = (c::<T>(0.5), T::one(), c::<T>(2.0));
    let rho = solve_fixed_point(|t: T| (-t).exp())?;
    let sigma2 = (rho - rho * rho - rho * rho * rho) / ((one + rho) * (one + rho));
    let full_binary = solve_fixed_point(|t: T| half + half * (one - t) * (one - t))?;
    let binary_lr = solve_fixed_point(|t: T| (one - t / two) * (one - t / two))?;
    let plane = solve_fixed_point(|t: T| one / (one + t))?;
    let t0 = solve_fixed_point(|t: T| (one + t) * (-t).exp())?;
    Ok(ConstantsReport {
        rho,
        sigma2,
        family_means: FamilyMeans { uniform: rho, full_binary, binary_lr, plane },
        full_binary_variance_coeff: one / full_binary_precision(half, full_binary),
        t0,
        path_cover_coeff: one - (two - (t0 + two) * (-t0).exp()),
    })
}

/// Outcome of [`clt_check`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CltReport {
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    pub mean: f64,
    pub variance: f64,
    pub mean_over_n: f64,
    pub variance_over_n: f64,
    /// KS distance to `N(rho n, sigma2 n)`.
    pub ks_limit: f64,
    /// KS distance to the normal law with the sample mean and variance.
    pub ks_fitted: f64,
    #[serde(skip)]
    pub histogram: TrialHistogram,
}

/// Runs the dice game `trials` times at size `n` and compares the outcome
/// with its Gaussian limit.
pub fn clt_check(n: usize, trials: u64, seed: u64) -> CltReport {
    let k = constants::<f64>().expect("constants converge");
    let histogram = run_trials(n, "alpha", |r| dice_trial(n, r), trials, seed);
    let nf = n as f64;
    let mean = histogram.mean();
    let variance = histogram.variance();
    let ks_limit = ks_discrete_normal(&histogram, k.rho * nf, (k.sigma2 * nf).sqrt()).expect("non-empty");
    let ks_fitted = ks_discrete_normal(&histogram, mean, variance.sqrt()).expect("non-empty");
    CltReport {
        n,
        trials,
        seed,
        mean,
        variance,
        mean_over_n: mean / nf,
        variance_over_n: variance / nf,
        ks_limit,
        ks_fitted,
        histogram,
    }
}
