//! Self-checks behind `slither verify`: the fast algorithms against
//! brute force, exhaustive sweeps and closed forms.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use clap::ValueEnum;
use num_bigint::BigUint;
use slither_core::asymptotics::constants;
use slither_core::codec::{
    coupon_alpha, read_capacity_edges, read_path_edges, read_root_and_pset, slither_decode,
    slither_decode_with_aux, slither_encode, RootClass,
};
use slither_core::enumeration::{
    count_independence, exact_dice_distribution, exact_rooted_distribution, expected_alpha, full_binary_table,
    independence_table, table_mean, Parameter, DEFAULT_BUDGET,
};
use slither_core::games::{chi_square, dice_trial, run_trials};
use slither_core::tree::{bf_max_capacity_edges, bf_max_independent, classify, independence_number, max_capacity_edges};
use slither_core::{SlitherCode, Variant};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Level {
    Quick,
    Full,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, f: impl FnOnce() -> Result<String, String>) -> Check {
    match f() {
        Ok(detail) => Check { name, passed: true, detail },
        Err(detail) => Check { name, passed: false, detail },
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Every code of length `n - 1` over `1..=n`.
fn all_codes(n: usize) -> impl Iterator<Item = Vec<usize>> {
    let len = n - 1;
    (0..n.pow(len as u32)).map(move |mut k| {
        let mut seq = vec![0; len];
        for slot in seq.iter_mut().rev() {
            *slot = k % n + 1;
            k /= n;
        }
        seq
    })
}

fn code(n: usize, variant: Variant, seq: Vec<usize>) -> SlitherCode {
    SlitherCode::new(n, variant, seq).expect("generated codes are in range")
}

pub fn run_checks(level: Level) -> Vec<Check> {
    let full = level == Level::Full;
    let small = if full { 6 } else { 5 };
    let mut checks = vec![
        check("worked example", || {
            let c = code(10, Variant::Normal, vec![3, 1, 4, 1, 5, 9, 2, 6, 5]);
            let (tree, aux) = slither_decode_with_aux(&c);
            let r = read_root_and_pset(&c).map_err(|e| e.to_string())?;
            ensure(aux.0 == [7, 8, 10, 6, 2, 5, 1, 4, 3], || format!("auxiliary {:?}", aux.0))?;
            ensure(tree.root() == 9 && r.root == 9 && r.root_class == RootClass::P, || "root".into())?;
            ensure(r.alpha == 6 && r.p_set == BTreeSet::from([2, 6, 7, 8, 9, 10]), || "P-set".into())?;
            ensure(slither_encode(&tree, Variant::Normal).0 == c, || "re-encode".into())?;
            Ok("n = 10".into())
        }),
        check("bijection", || {
            let top = if full { 5 } else { 4 };
            for variant in [Variant::Normal, Variant::Comply, Variant::Capacity(3.try_into().unwrap())] {
                for n in 1..=top {
                    let mut seen = HashSet::new();
                    for seq in all_codes(n) {
                        let c = code(n, variant, seq);
                        let t = slither_decode(&c);
                        ensure(slither_encode(&t, variant).0 == c, || format!("{c:?} does not re-encode"))?;
                        seen.insert(t);
                    }
                    ensure(seen.len() == n.pow(n as u32 - 1), || format!("{variant} n = {n}: repeated trees"))?;
                }
            }
            Ok(format!("n <= {top}, normal/comply/b=3"))
        }),
        check("oracles", || {
            for n in 1..=small {
                for seq in all_codes(n) {
                    let t = slither_decode(&code(n, Variant::Normal, seq.clone()));
                    let alpha = independence_number(&t);
                    ensure(bf_max_independent(&t) == Ok(alpha), || format!("independence on {seq:?}"))?;
                    for b in 1..=3 {
                        ensure(max_capacity_edges(&t, b) == bf_max_capacity_edges(&t, b), || {
                            format!("b = {b} on {seq:?}")
                        })?;
                    }
                }
            }
            Ok(format!("all rooted trees, n <= {small}"))
        }),
        check("readings", || {
            for n in 1..=small {
                for seq in all_codes(n) {
                    let c = code(n, Variant::Normal, seq.clone());
                    let t = slither_decode(&c);
                    let r = read_root_and_pset(&c).map_err(|e| e.to_string())?;
                    let p = classify(&t, Variant::Normal);
                    ensure(r.root == t.root() && r.p_set == p.p_set(), || format!("normal reading of {seq:?}"))?;
                    let c2 = code(n, Variant::Comply, seq.clone());
                    let t2 = slither_decode(&c2);
                    let (_, edges) = read_path_edges(&c2).map_err(|e| e.to_string())?;
                    ensure(Ok(edges) == max_capacity_edges(&t2, 2), || format!("path edges of {seq:?}"))?;
                    let c3 = code(n, Variant::Capacity(3.try_into().unwrap()), seq.clone());
                    let (_, edges) = read_capacity_edges(&c3, 3).map_err(|e| e.to_string())?;
                    ensure(Ok(edges) == max_capacity_edges(&slither_decode(&c3), 3), || format!("b = 3 of {seq:?}"))?;
                }
            }
            Ok(format!("every code, n <= {small}"))
        }),
        check("dice game law", || {
            for n in 1..=small {
                let dice = exact_dice_distribution(n, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
                let trees = exact_rooted_distribution(n, Parameter::Independence, Variant::Normal, DEFAULT_BUDGET)
                    .map_err(|e| e.to_string())?;
                ensure(dice.counts == trees.counts, || format!("n = {n}"))?;
            }
            Ok(format!("exact, n <= {small}"))
        }),
        check("closed form", || {
            for n in 2..=small + 1 {
                let rooted = exact_rooted_distribution(n, Parameter::Independence, Variant::Normal, DEFAULT_BUDGET)
                    .map_err(|e| e.to_string())?;
                for a in 1..n {
                    let c = count_independence(n, a).map_err(|e| e.to_string())?;
                    ensure(c * n == rooted.count(a), || format!("n = {n}, alpha = {a}"))?;
                }
            }
            let top = if full { 60 } else { 30 };
            for n in 2..=top {
                let total = independence_table(n).map_err(|e| e.to_string())?.total;
                ensure(total == BigUint::from(n).pow(n as u32 - 2), || format!("total at n = {n}"))?;
            }
            for n in 2..=if full { 12 } else { 8 } {
                let table = independence_table(n).map_err(|e| e.to_string())?;
                ensure(expected_alpha(n) == table_mean(&table), || format!("mean at n = {n}"))?;
            }
            Ok(format!("rooted n <= {}, totals n <= {top}", small + 1))
        }),
        check("full binary", || {
            let top = if full { 5 } else { 4 };
            for m in 1..=top {
                let n = 2 * m + 1;
                let mut deck: Vec<usize> = (1..=m).flat_map(|v| [v, v]).collect();
                let mut by_deal: BTreeMap<usize, BigUint> = BTreeMap::new();
                let mut by_tree: BTreeMap<usize, BigUint> = BTreeMap::new();
                loop {
                    let a = coupon_alpha(deck.iter().copied(), n).expect("2m cards suffice");
                    *by_deal.entry(a).or_default() += 1u32;
                    let t = slither_decode(&code(n, Variant::Normal, deck.clone()));
                    *by_tree.entry(independence_number(&t)).or_default() += 1u32;
                    if !next_permutation(&mut deck) {
                        break;
                    }
                }
                let table = full_binary_table(m).map_err(|e| e.to_string())?;
                ensure(table.counts == by_deal && by_deal == by_tree, || format!("m = {m}"))?;
            }
            Ok(format!("m <= {top}"))
        }),
        check("constants", || {
            let k = constants::<f64>().map_err(|e| e.to_string())?;
            let close = |a: f64, b: f64| (a - b).abs() < 1e-12;
            ensure(close(k.rho, (-k.rho).exp()), || "rho".into())?;
            ensure(close(k.family_means.full_binary, 2.0 - 2f64.sqrt()), || "full binary mean".into())?;
            ensure(close(k.family_means.binary_lr, 4.0 - 2.0 * 3f64.sqrt()), || "binary mean".into())?;
            ensure(close(k.family_means.plane, (5f64.sqrt() - 1.0) / 2.0), || "plane mean".into())?;
            ensure(close(k.t0, (1.0 + k.t0) * (-k.t0).exp()), || "t0".into())?;
            ensure((k.full_binary_variance_coeff - (8.5 - 6.0 * 2f64.sqrt())).abs() < 1e-10, || "variance".into())?;
            Ok(format!("rho = {:.12}", k.rho))
        }),
    ];
    if full {
        checks.push(check("dice sampler", || {
            let exact = exact_dice_distribution(6, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            let h = run_trials(6, "alpha", |r| dice_trial(6, r), 200_000, 1);
            let chi = chi_square(&h, &exact).map_err(|e| e.to_string())?;
            ensure(chi.passes(1e-4), || format!("chi-square p = {:.2e}", chi.p_value))?;
            Ok(format!("n = 6, p = {:.3}", chi.p_value))
        }));
    }
    checks
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
