mod common;

use std::collections::HashSet;

use proptest::prelude::*;
use slither_core::codec::*;
use slither_core::games::{coupon_read, sample_uniform_rooted_tree, RandomSource};
use slither_core::tree::*;

fn variants() -> [Variant; 4] {
    [
        Variant::Normal,
        Variant::Comply,
        Variant::with_capacity(3).unwrap(),
        Variant::with_capacity(4).unwrap(),
    ]
}

#[test]
fn bijection_on_small_n() {
    for variant in variants() {
        for n in 1..=5 {
            let mut seen = HashSet::new();
            for seq in common::sequences(n, n - 1) {
                let code = SlitherCode::new(n, variant, seq).unwrap();
                let (tree, aux) = slither_decode_with_aux(&code);
                let (back, aux_back) = slither_encode(&tree, variant);
                assert_eq!(back, code);
                assert_eq!(aux_back, aux);
                assert!(seen.insert(format!("{tree:?}")));
            }
            assert_eq!(seen.len(), n.pow(n as u32 - 1));
        }
    }
}

#[test]
fn encoding_every_tree_is_injective() {
    // Trees come from Prüfer codes, so this direction does not lean on decode.
    for variant in variants() {
        for n in 1..=6 {
            let mut codes = HashSet::new();
            for t in common::all_rooted(n) {
                let (code, _) = slither_encode(&t, variant);
                assert_eq!(slither_decode(&code), t);
                codes.insert(code);
            }
            assert_eq!(codes.len(), n.pow(n as u32 - 1));
        }
    }
}

#[test]
fn random_round_trips_at_scale() {
    let mut rng = RandomSource::new(99);
    for variant in [Variant::Normal, Variant::Comply, Variant::with_capacity(3).unwrap()] {
        for n in [50, 500] {
            for _ in 0..1000 {
                let seq: Vec<usize> = (1..n).map(|_| rng.die(n)).collect();
                let code = SlitherCode::new(n, variant, seq).unwrap();
                assert_eq!(slither_encode(&slither_decode(&code), variant).0, code);

                let t = sample_uniform_rooted_tree(n, Variant::Normal, &mut rng);
                assert_eq!(slither_decode(&slither_encode(&t, variant).0), t);
            }
        }
    }
}

fn check_readings(n: usize, seq: &[usize]) {
    let normal = SlitherCode::new(n, Variant::Normal, seq.to_vec()).unwrap();
    let tree = slither_decode(&normal);
    let classes = classify(&tree, Variant::Normal);
    let alpha = read_alpha(&normal).unwrap();
    assert_eq!(alpha, classes.count_p(), "{seq:?}");
    assert_eq!(coupon_read(seq, n).unwrap(), alpha);
    let r = read_root_and_pset(&normal).unwrap();
    assert_eq!(r.root, tree.root(), "{seq:?}");
    assert_eq!(r.p_set, classes.p_set(), "{seq:?}");
    let root_is_p = classes.class(tree.root()).is_p();
    assert_eq!(r.root_class == RootClass::P, root_is_p);
    assert_eq!(r.alpha + r.matching, n);
    assert_eq!(read_matching_via_beta(&normal).unwrap().1, n - alpha);

    let comply = SlitherCode::new(n, Variant::Comply, seq.to_vec()).unwrap();
    let t2 = slither_decode(&comply);
    let (_, edges) = read_path_edges(&comply).unwrap();
    let c = classify(&t2, Variant::Comply);
    assert_eq!(edges, 2 * c.count_n() + c.p_set_with(1).len(), "{seq:?}");
    assert_eq!(edges, max_capacity_edges(&t2, 2).unwrap());

    for b in 1..=4 {
        let code = SlitherCode::new(n, Variant::with_capacity(b).unwrap(), seq.to_vec()).unwrap();
        let t = slither_decode(&code);
        assert_eq!(read_capacity_edges(&code, b).unwrap().1, max_capacity_edges(&t, b).unwrap(), "b = {b}, {seq:?}");
    }

    for variant in variants() {
        let t = slither_decode(&SlitherCode::new(n, variant, seq.to_vec()).unwrap());
        for v in 1..=n {
            assert_eq!(t.out_degree(v), seq.iter().filter(|&&s| s == v).count());
        }
    }
}

#[test]
fn readings_agree_exhaustively() {
    for n in 1..=6 {
        for seq in common::sequences(n, n - 1) {
            check_readings(n, &seq);
        }
    }
}

#[test]
fn capacity_readings_match_brute_force() {
    for n in 2..=6 {
        for seq in common::sequences(n, n - 1) {
            for b in [1, 2, 3] {
                let code = SlitherCode::new(n, Variant::with_capacity(b).unwrap(), seq.clone()).unwrap();
                let t = slither_decode(&code);
                assert_eq!(read_capacity_edges(&code, b).unwrap().1, bf_max_capacity_edges(&t, b).unwrap());
            }
        }
    }
}

proptest! {
    #[test]
    fn readings_agree_on_random_codes(seq in (7usize..40).prop_flat_map(|n| prop::collection::vec(1..=n, n - 1))) {
        check_readings(seq.len() + 1, &seq);
    }

    #[test]
    fn auxiliary_is_permutation_of_non_root(seq in (1usize..60).prop_flat_map(|n| prop::collection::vec(1..=n, n - 1)), b in 1usize..4) {
        let n = seq.len() + 1;
        let code = SlitherCode::new(n, Variant::with_capacity(b).unwrap(), seq.clone()).unwrap();
        let (tree, aux) = slither_decode_with_aux(&code);
        let mut sorted = aux.0.clone();
        sorted.sort_unstable();
        let expected: Vec<usize> = (1..=n).filter(|&v| v != tree.root()).collect();
        prop_assert_eq!(sorted, expected);
        for (a, s) in aux.0.iter().zip(&seq) {
            prop_assert_eq!(tree.parent(*a), Some(*s));
        }
    }

    #[test]
    fn prufer_round_trip(seq in (2usize..40).prop_flat_map(|n| prop::collection::vec(1..=n, n - 2))) {
        let t = prufer_decode(&seq).unwrap();
        prop_assert_eq!(prufer_encode(&t).unwrap(), seq);
    }
}
