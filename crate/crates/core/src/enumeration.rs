//! Exact counting: Stirling numbers, closed-form independence-number
//! distributions, and exhaustive tallies over every code of a given length.

use std::cell::RefCell;
use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::codec::{coupon_alpha, decode_symbols};
use crate::tree::{self, RootedTree, Variant};

pub type BigCount = BigUint;

/// Default cap on `n^(n-1)` for exhaustive sweeps (`7^6`).
pub const DEFAULT_BUDGET: u64 = 117_649;
/// Factorials up to this argument are memoized.
pub const FACTORIAL_CACHE_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("formula produced the non-integer {0}")]
    NonIntegral(String),
    #[error("exhaustive sweep over {size} sequences exceeds budget {budget}")]
    BudgetExceeded { size: u128, budget: u64 },
    #[error("{0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Tree(#[from] tree::TreeError),
}

thread_local! {
    static FACTORIALS: RefCell<Vec<BigUint>> = RefCell::new(vec![BigUint::one()]);
}

pub fn factorial(k: usize) -> BigUint {
    if k > FACTORIAL_CACHE_CAP {
        return (1..=k).fold(BigUint::one(), |acc, i| acc * i);
    }
    FACTORIALS.with(|cache| {
        let mut cache = cache.borrow_mut();
        while cache.len() <= k {
            let next = cache.last().unwrap() * cache.len();
            cache.push(next);
        }
        cache[k].clone()
    })
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Memoized rows of Stirling numbers of the second kind.
#[derive(Debug, Clone)]
pub struct Stirling2Table {
    rows: Vec<Vec<BigUint>>,
}

impl Default for Stirling2Table {
    fn default() -> Self {
        Stirling2Table { rows: vec![vec![BigUint::one()]] }
    }
}

impl Stirling2Table {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of partitions of an `m`-set into `k` non-empty blocks.
    pub fn get(&mut self, m: usize, k: usize) -> BigUint {
        if k > m {
            return BigUint::zero();
        }
        while self.rows.len() <= m {
            let prev = self.rows.last().unwrap();
            let i = self.rows.len();
            let mut row = vec![BigUint::zero(); i + 1];
            for j in 1..=i {
                let stay = if j < prev.len() { &prev[j] * j } else { BigUint::zero() };
                row[j] = stay + &prev[j - 1];
            }
            self.rows.push(row);
        }
        self.rows[m][k].clone()
    }
}

pub fn stirling2(m: usize, k: usize) -> BigUint {
    Stirling2Table::new().get(m, k)
}

fn to_count(r: BigRational) -> Result<BigCount, EnumError> {
    if !r.is_integer() || r.is_negative() {
        return Err(EnumError::NonIntegral(r.to_string()));
    }
    Ok(r.to_integer().to_biguint().unwrap())
}

fn rational(x: BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// `base^exp` for a possibly negative exponent.
fn rational_pow(base: u64, exp: i64) -> BigRational {
    let p = BigRational::from_integer(BigInt::from(base)).pow(exp.unsigned_abs() as i32);
    if exp < 0 {
        p.recip()
    } else {
        p
    }
}

/// Number of labelled unrooted trees on `n` vertices with independence
/// number `alpha`:
/// `n^(n-alpha-2) * n!/alpha! * (S(alpha, n-alpha) + alpha*S(alpha-1, n-alpha))`.
///
/// The power of `n` is negative when `alpha = n - 1`, so evaluation is done
/// over the rationals. Zero outside `1..n`.
pub fn count_independence(n: usize, alpha: usize) -> Result<BigCount, EnumError> {
    let mut table = Stirling2Table::new();
    count_independence_with(&mut table, n, alpha)
}

fn count_independence_with(table: &mut Stirling2Table, n: usize, alpha: usize) -> Result<BigCount, EnumError> {
    if n == 0 || alpha > n {
        return Ok(BigUint::zero());
    }
    let k = n - alpha;
    let exact = table.get(alpha, k);
    let overshoot = if alpha == 0 { BigUint::zero() } else { table.get(alpha - 1, k) * alpha };
    let value = rational_pow(n as u64, n as i64 - alpha as i64 - 2)
        * rational(factorial(n))
        / rational(factorial(alpha))
        * rational(exact + overshoot);
    to_count(value)
}

/// The closed-form distribution over unrooted labelled trees.
pub fn independence_table(n: usize) -> Result<DistributionTable, EnumError> {
    if n == 0 {
        return Err(EnumError::InvalidArgument("n must be at least 1".into()));
    }
    let mut table = Stirling2Table::new();
    let mut counts = BTreeMap::new();
    for alpha in 1..=n {
        let c = count_independence_with(&mut table, n, alpha)?;
        if !c.is_zero() {
            counts.insert(alpha, c);
        }
    }
    Ok(DistributionTable::new(n, Family::Unrooted, Parameter::Independence, counts))
}

/// Expected independence number of a uniform labelled tree,
/// `sum_{k=1}^n C(n,k) (-k/n)^(k-1)`, exactly.
pub fn expected_alpha(n: usize) -> BigRational {
    let nn = BigInt::from(n);
    (1..=n)
        .map(|k| {
            let ratio = BigRational::new(-BigInt::from(k), nn.clone());
            rational(binomial(n, k)) * ratio.pow(k as i32 - 1)
        })
        .fold(BigRational::zero(), |acc, t| acc + t)
}

/// Mean of an exact table as a rational.
pub fn table_mean(table: &DistributionTable) -> BigRational {
    let weighted = table
        .counts
        .iter()
        .fold(BigUint::zero(), |acc, (&v, c)| acc + c * v);
    BigRational::new(BigInt::from(weighted), BigInt::from(table.total.clone()))
}

/// Factorial over the rationals with `1/k! = 0` for negative `k`; `None`
/// when `k < 0` (so the caller can zero the term).
fn factorial_signed(k: i64) -> Option<BigRational> {
    (k >= 0).then(|| rational(factorial(k as usize)))
}

/// Number of full binary trees on `2m + 1` vertices, internal vertices
/// `1..=m`, with independence number `alpha`. The first term counts trees
/// with an N-position root, the second those with a P-position root.
pub fn count_full_binary(m: usize, alpha: usize) -> Result<BigCount, EnumError> {
    if m == 0 {
        return Err(EnumError::InvalidArgument("m must be at least 1".into()));
    }
    let (m, a) = (m as i64, alpha as i64);
    let term = |den: [i64; 3], top: i64, two_exp: i64| -> Option<BigRational> {
        let mut value = factorial_signed(m)? * factorial_signed(top)? * factorial_signed(2 * m - a)?;
        for d in den {
            value /= factorial_signed(d)?;
        }
        Some(value * rational_pow(2, -two_exp))
    };
    let root_n = term([a - m - 1, 2 * a - 2 * m - 1, 4 * m - 3 * a + 2], a, 3 * a - 3 * m - 2);
    let root_p = term([a - m - 2, 2 * a - 2 * m - 2, 4 * m - 3 * a + 3], a - 1, 3 * a - 3 * m - 4);
    let sum = root_n.unwrap_or_else(BigRational::zero) + root_p.unwrap_or_else(BigRational::zero);
    to_count(sum)
}

pub fn full_binary_table(m: usize) -> Result<DistributionTable, EnumError> {
    let mut counts = BTreeMap::new();
    for alpha in 1..=2 * m + 1 {
        let c = count_full_binary(m, alpha)?;
        if !c.is_zero() {
            counts.insert(alpha, c);
        }
    }
    Ok(DistributionTable::new(2 * m + 1, Family::FullBinary, Parameter::Independence, counts))
}

/// Which population a table counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Labelled trees without a root (`n^(n-2)` of them).
    Unrooted,
    /// Labelled rooted trees (`n^(n-1)`).
    Rooted,
    /// Throw sequences of the dice game (`n^(n-1)`).
    Dice,
    /// Full binary trees with internal vertices `1..=m` (`(2m)!/2^m`).
    FullBinary,
}

/// The tree statistic being tallied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parameter {
    Independence,
    Matching,
    PathEdges,
    PathCover,
    CapacityEdges(usize),
}

impl Parameter {
    pub fn evaluate(self, tree: &RootedTree) -> Result<usize, tree::TreeError> {
        match self {
            Parameter::Independence => Ok(tree::independence_number(tree)),
            Parameter::Matching => Ok(tree::matching_number(tree)),
            Parameter::PathEdges => tree::max_capacity_edges(tree, 2),
            Parameter::PathCover => Ok(tree::path_cover_number(tree)),
            Parameter::CapacityEdges(b) => tree::max_capacity_edges(tree, b),
        }
    }

    pub fn name(self) -> String {
        match self {
            Parameter::Independence => "independence".into(),
            Parameter::Matching => "matching".into(),
            Parameter::PathEdges => "path-edges".into(),
            Parameter::PathCover => "path-cover".into(),
            Parameter::CapacityEdges(b) => format!("b={b}"),
        }
    }
}

impl std::str::FromStr for Parameter {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "independence" => Ok(Parameter::Independence),
            "matching" => Ok(Parameter::Matching),
            "path-edges" => Ok(Parameter::PathEdges),
            "path-cover" => Ok(Parameter::PathCover),
            _ => match s.strip_prefix("b=").and_then(|k| k.parse::<usize>().ok()) {
                Some(b) if b >= 1 => Ok(Parameter::CapacityEdges(b)),
                _ => Err(format!(
                    "unknown parameter {s:?}: expected independence, matching, path-edges, path-cover or b=K"
                )),
            },
        }
    }
}

impl Serialize for Parameter {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.name())
    }
}

/// Exact counts indexed by parameter value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistributionTable {
    pub n: usize,
    pub family: Family,
    pub parameter: Parameter,
    pub counts: BTreeMap<usize, BigCount>,
    pub total: BigCount,
}

impl DistributionTable {
    pub fn new(n: usize, family: Family, parameter: Parameter, counts: BTreeMap<usize, BigCount>) -> Self {
        let total = counts.values().fold(BigUint::zero(), |acc, c| acc + c);
        DistributionTable { n, family, parameter, counts, total }
    }

    pub fn count(&self, value: usize) -> BigCount {
        self.counts.get(&value).cloned().unwrap_or_default()
    }

    pub fn probabilities(&self) -> BTreeMap<usize, f64> {
        let total = self.total.to_f64().unwrap_or(f64::NAN);
        self.counts
            .iter()
            .map(|(&v, c)| (v, c.to_f64().unwrap_or(f64::NAN) / total))
            .collect()
    }

    /// JSON with decimal-string counts and float probabilities.
    pub fn to_json(&self) -> serde_json::Value {
        let counts: serde_json::Map<String, serde_json::Value> =
            self.counts.iter().map(|(v, c)| (v.to_string(), c.to_string().into())).collect();
        let probs: serde_json::Map<String, serde_json::Value> =
            self.probabilities().into_iter().map(|(v, p)| (v.to_string(), p.into())).collect();
        serde_json::json!({
            "n": self.n,
            "family": self.family,
            "parameter": self.parameter,
            "total": self.total.to_string(),
            "counts": counts,
            "probabilities": probs,
        })
    }
}

fn check_budget(n: usize, len: usize, budget: u64) -> Result<(), EnumError> {
    let size = (n as u128).checked_pow(len as u32).unwrap_or(u128::MAX);
    if size > budget as u128 {
        return Err(EnumError::BudgetExceeded { size, budget });
    }
    Ok(())
}

/// Runs `visit` over every sequence of `len` symbols from `1..=n`, split by
/// leading symbol across threads, and merges the resulting tallies.
fn sweep<F>(n: usize, len: usize, visit: F) -> Result<BTreeMap<usize, BigCount>, EnumError>
where
    F: Fn(&[usize]) -> Result<usize, EnumError> + Sync,
{
    if len == 0 {
        let mut counts = BTreeMap::new();
        counts.insert(visit(&[])?, BigUint::one());
        return Ok(counts);
    }
    let partials: Vec<BTreeMap<usize, u64>> = (1..=n)
        .into_par_iter()
        .map(|lead| {
            let mut tally = BTreeMap::new();
            let mut seq = vec![1usize; len];
            seq[0] = lead;
            loop {
                *tally.entry(visit(&seq)?).or_insert(0u64) += 1;
                // Odometer over positions 1..len.
                let mut i = len;
                loop {
                    i -= 1;
                    if i == 0 {
                        return Ok(tally);
                    }
                    if seq[i] < n {
                        seq[i] += 1;
                        break;
                    }
                    seq[i] = 1;
                }
            }
        })
        .collect::<Result<_, EnumError>>()?;
    let mut counts = BTreeMap::new();
    for part in partials {
        for (v, c) in part {
            *counts.entry(v).or_insert_with(BigUint::zero) += c;
        }
    }
    Ok(counts)
}

/// Exact distribution of `parameter` over all `n^(n-1)` rooted trees,
/// obtained by decoding every code under `variant`.
pub fn exact_rooted_distribution(
    n: usize,
    parameter: Parameter,
    variant: Variant,
    budget: u64,
) -> Result<DistributionTable, EnumError> {
    if n == 0 {
        return Err(EnumError::InvalidArgument("n must be at least 1".into()));
    }
    check_budget(n, n - 1, budget)?;
    let counts = sweep(n, n - 1, |seq| {
        let (t, _) = decode_symbols(n, variant, seq);
        Ok(parameter.evaluate(&t)?)
    })?;
    Ok(DistributionTable::new(n, Family::Rooted, parameter, counts))
}

/// Exact distribution of the dice-game outcome over all `n^(n-1)` throw
/// sequences of length `n - 1`.
pub fn exact_dice_distribution(n: usize, budget: u64) -> Result<DistributionTable, EnumError> {
    if n == 0 {
        return Err(EnumError::InvalidArgument("n must be at least 1".into()));
    }
    check_budget(n, n - 1, budget)?;
    let counts = sweep(n, n - 1, |seq| {
        Ok(coupon_alpha(seq.iter().copied(), n).expect("n - 1 throws always suffice"))
    })?;
    Ok(DistributionTable::new(n, Family::Dice, Parameter::Independence, counts))
}
