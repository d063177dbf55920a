mod common;

use std::collections::BTreeMap;

use slither_core::enumeration::{exact_dice_distribution, full_binary_table, DistributionTable, Family, Parameter, DEFAULT_BUDGET};
use slither_core::games::*;
use slither_core::tree::{independence_number, Variant};

const LEVEL: f64 = 1e-4;

#[test]
fn dice_four_within_three_sigma() {
    let trials = 1_000_000u64;
    let h = run_trials(4, "alpha", |r| dice_trial(4, r), trials, 1);
    assert_eq!(h.counts.values().sum::<u64>(), trials);
    let p2 = h.counts[&2] as f64 / trials as f64;
    let sigma = (0.75f64 * 0.25 / trials as f64).sqrt();
    assert!((p2 - 0.75).abs() < 3.0 * sigma, "{p2}");
    assert_eq!(h.counts.keys().copied().collect::<Vec<_>>(), vec![2, 3]);
}

#[test]
fn dice_six_matches_exact_table() {
    let exact = exact_dice_distribution(6, DEFAULT_BUDGET).unwrap();
    let h = run_trials(6, "alpha", |r| dice_trial(6, r), 1_000_000, 2);
    let chi = chi_square(&h, &exact).unwrap();
    assert!(chi.passes(LEVEL), "{chi:?}");
    assert!(tv_distance(&h, &exact).unwrap() < 0.005);
}

#[test]
fn harness_is_deterministic_and_order_free() {
    let a = run_trials(9, "alpha", |r| dice_trial(9, r), 5_000, 42);
    let b = run_trials(9, "alpha", |r| dice_trial(9, r), 5_000, 42);
    let s = run_trials_serial(9, "alpha", |r| dice_trial(9, r), 5_000, 42);
    assert_eq!(a, b);
    assert_eq!(a, s);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
    let c = pool.install(|| run_trials(9, "alpha", |r| dice_trial(9, r), 5_000, 42));
    assert_eq!(a, c);
    assert_ne!(a, run_trials(9, "alpha", |r| dice_trial(9, r), 5_000, 43));
}

#[test]
fn rooted_sampler_is_uniform_on_four_vertices() {
    let trees = common::all_rooted(4);
    let index: BTreeMap<String, usize> = trees.iter().enumerate().map(|(i, t)| (format!("{t:?}"), i)).collect();
    let exact = DistributionTable::new(
        4,
        Family::Rooted,
        Parameter::Independence,
        (0..trees.len()).map(|i| (i, 1u32.into())).collect(),
    );
    let h = run_trials(
        4,
        "tree",
        |r| index[&format!("{:?}", sample_uniform_rooted_tree(4, Variant::Normal, r))],
        1_000_000,
        3,
    );
    let chi = chi_square(&h, &exact).unwrap();
    assert_eq!(chi.cells, 64);
    assert!(chi.passes(LEVEL), "{chi:?}");
}

#[test]
fn unrooted_sampler_splits_twelve_to_four() {
    let h = run_trials(
        4,
        "alpha",
        |r| independence_number(&sample_uniform_labelled_tree(4, r).rooted_at(1)),
        200_000,
        4,
    );
    let exact = DistributionTable::new(4, Family::Unrooted, Parameter::Independence, [(2, 12u32.into()), (3, 4u32.into())].into());
    assert!(chi_square(&h, &exact).unwrap().passes(LEVEL));
}

#[test]
fn small_decks() {
    let mut rng = RandomSource::new(5);
    let star = Deck::new(vec![3, 0, 0, 0]).unwrap();
    assert!((0..100).all(|_| card_trial(&star, &mut rng) == 3));
    assert!(Deck::new(vec![1, 1, 1, 1]).is_err());

    // Deck (1,1,1,0): the 6 deals all start with two distinct labels.
    let deck = Deck::new(vec![1, 1, 1, 0]).unwrap();
    assert!((0..100).all(|_| card_trial(&deck, &mut rng) == 2));
    assert!((0..50).all(|_| full_binary_trial(1, &mut rng) == 2));
}

#[test]
fn full_binary_game_matches_formula() {
    for m in 2..=4 {
        let exact = full_binary_table(m).unwrap();
        let h = run_trials(2 * m + 1, "alpha", |r| full_binary_trial(m, r), 200_000, 6 + m as u64);
        assert!(chi_square(&h, &exact).unwrap().passes(LEVEL), "m = {m}");
    }
}

#[test]
fn family_means() {
    let n = 500;
    let lr = run_trials(n, "alpha", |r| binary_lr_trial(n, r), 20_000, 7);
    assert!((lr.mean() / n as f64 - (4.0 - 2.0 * 3f64.sqrt())).abs() < 0.02);
    let plane = run_trials(n, "alpha", |r| plane_trial(n, r), 20_000, 8);
    assert!((plane.mean() / n as f64 - (5f64.sqrt() - 1.0) / 2.0).abs() < 0.02);
}

#[test]
fn plane_reading_examples() {
    // One run of reds: a single block.
    assert_eq!(plane_alpha(&[0, 1, 2, 3, 0, 0], 3), 2);
    // Every red card in its own block.
    assert_eq!(plane_alpha(&[1, 0, 2, 0, 3, 0], 3), 2);
    assert_eq!(plane_alpha(&[1], 1), 1);
}

#[test]
fn sampled_families_have_game_means() {
    let n = 301;
    let mean = |f: slither_core::games::Family, seed| {
        let h = run_trials(n, "alpha", |r| independence_number(&sample_family(f, n, r).unwrap()), 3_000, seed);
        h.mean() / n as f64
    };
    assert!((mean(slither_core::games::Family::FullBinary, 9) - (2.0 - 2f64.sqrt())).abs() < 0.02);
    assert!((mean(slither_core::games::Family::BinaryLr, 10) - (4.0 - 2.0 * 3f64.sqrt())).abs() < 0.02);
    assert!((mean(slither_core::games::Family::Plane, 11) - (5f64.sqrt() - 1.0) / 2.0).abs() < 0.02);
}
