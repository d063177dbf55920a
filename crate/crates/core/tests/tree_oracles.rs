mod common;

use std::collections::BTreeSet;

use slither_core::games::{sample_uniform_rooted_tree, RandomSource};
use slither_core::tree::*;

fn check_tree(t: &RootedTree) {
    let n = t.n();
    let normal = classify(t, Variant::Normal);
    let comply = classify(t, Variant::Comply);

    let alpha = independence_number(t);
    assert_eq!(alpha, bf_max_independent(t).unwrap(), "{t:?}");
    assert_eq!(alpha + matching_number(t), n);
    assert_eq!(normal.count_p(), alpha);

    for b in 1..=3 {
        let fast = max_capacity_edges(t, b).unwrap();
        assert_eq!(fast, bf_max_capacity_edges(t, b).unwrap(), "b = {b}, {t:?}");

        let s = strategic_set(t, b).unwrap();
        assert_eq!(s.edges.len(), fast);
        let classes = classify(t, Variant::with_capacity(b).unwrap());
        let mut degree = vec![0usize; n + 1];
        let mut down = vec![0usize; n + 1];
        for &(p, c) in &s.edges {
            assert_eq!(t.parent(c), Some(p));
            assert!(classes.class(c).is_p());
            degree[p] += 1;
            degree[c] += 1;
            down[p] += 1;
        }
        for v in 1..=n {
            assert!(degree[v] <= b);
            match classes.class(v) {
                Position::N => assert_eq!(down[v], b),
                Position::P(k) => assert_eq!(down[v], k),
            }
        }
    }
    assert_eq!(max_capacity_edges(t, 1).unwrap(), matching_number(t));
    assert_eq!(
        max_capacity_edges(t, 2).unwrap(),
        2 * comply.count_n() + comply.p_set_with(1).len()
    );

    let m = matching_certificate(t);
    assert_eq!(m.size(), normal.count_n());
    let mut used = BTreeSet::new();
    for &(p, c) in &m.edges {
        assert!(used.insert(p) && used.insert(c), "matching edges overlap");
    }

    let paths = path_cover_decomposition(t);
    assert_eq!(paths.len(), n - (2 * comply.count_n() + comply.p_set_with(1).len()));
    let covered: Vec<usize> = paths.iter().flatten().copied().collect();
    let set: BTreeSet<usize> = covered.iter().copied().collect();
    assert_eq!(covered.len(), n);
    assert_eq!(set, (1..=n).collect());
    let unrooted = t.to_unrooted();
    for path in &paths {
        for w in path.windows(2) {
            let e = (w[0].min(w[1]), w[0].max(w[1]));
            assert!(unrooted.edges().contains(&e), "path step {w:?} is not an edge");
        }
    }
}

#[test]
fn exhaustive_small_trees() {
    for n in 1..=6 {
        let trees = common::all_rooted(n);
        assert_eq!(trees.len(), n.pow(n as u32 - 1));
        for t in &trees {
            check_tree(t);
        }
    }
}

#[test]
fn random_trees_up_to_twelve() {
    let mut rng = RandomSource::new(2024);
    for i in 0..2000 {
        let n = 7 + i % 6;
        check_tree(&sample_uniform_rooted_tree(n, Variant::Normal, &mut rng));
    }
}

#[test]
fn independence_is_root_invariant() {
    let mut rng = RandomSource::new(7);
    for i in 0..300 {
        let t = sample_uniform_rooted_tree(2 + i % 11, Variant::Comply, &mut rng);
        let alpha = independence_number(&t);
        let cover = path_cover_number(&t);
        for r in 1..=t.n() {
            let rerooted = t.reroot(r);
            assert_eq!(independence_number(&rerooted), alpha);
            assert_eq!(path_cover_number(&rerooted), cover);
        }
    }
}
