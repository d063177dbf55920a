use std::str::FromStr;

use super::{Dealer, Deck, GameError, RandomSource};
use crate::codec::{decode_symbols, prufer_decode};
use crate::tree::{RootedTree, UnrootedTree, Variant};

/// Uniform rooted tree on `1..=n`: decode a uniform code under `variant`.
pub fn sample_uniform_rooted_tree(n: usize, variant: Variant, rng: &mut RandomSource) -> RootedTree {
    assert!(n >= 1, "n must be positive");
    let code: Vec<usize> = (1..n).map(|_| rng.die(n)).collect();
    decode_symbols(n, variant, &code).0
}

/// Uniform labelled tree without a root, via the Prüfer code.
pub fn sample_uniform_labelled_tree(n: usize, rng: &mut RandomSource) -> UnrootedTree {
    assert!(n >= 1, "n must be positive");
    if n == 1 {
        return UnrootedTree::from_edges_unchecked(1, Vec::new());
    }
    let seq: Vec<usize> = (2..n).map(|_| rng.die(n)).collect();
    prufer_decode(&seq).expect("symbols drawn in range")
}

/// Random tree families with a card-game sampler.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Uniform,
    FullBinary,
    BinaryLr,
    Plane,
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "uniform" => Ok(Family::Uniform),
            "full-binary" => Ok(Family::FullBinary),
            "binary-lr" => Ok(Family::BinaryLr),
            "plane" => Ok(Family::Plane),
            _ => Err(format!("unknown family {s:?}: expected uniform, full-binary, binary-lr or plane")),
        }
    }
}

/// Draws one tree on `n` vertices from `family`.
///
/// * `FullBinary`: `n = 2m + 1`, internal vertices `1..=m`, normal code dealt
///   from the two-of-each deck.
/// * `BinaryLr`: normal code dealt from `n - 1` of the `2n` sided cards.
/// * `Plane`: a uniform ordered tree shape (cycle lemma on a shuffled step
///   sequence) with a uniformly random labelling.
pub fn sample_family(family: Family, n: usize, rng: &mut RandomSource) -> Result<RootedTree, GameError> {
    if n == 0 {
        return Err(GameError::InvalidArgument("n must be positive".into()));
    }
    match family {
        Family::Uniform => Ok(sample_uniform_rooted_tree(n, Variant::Normal, rng)),
        Family::FullBinary => {
            if n.is_multiple_of(2) {
                return Err(GameError::InvalidArgument(format!("full binary trees need odd n, got {n}")));
            }
            let mut cards = Deck::full_binary(n / 2).cards();
            rng.shuffle(&mut cards);
            Ok(decode_symbols(n, Variant::Normal, &cards).0)
        }
        Family::BinaryLr => {
            let mut cards: Vec<usize> = (1..=n).flat_map(|v| [v, v]).collect();
            let mut dealer = Dealer::new(&mut cards);
            let code: Vec<usize> = (1..n).map(|_| dealer.deal(rng).unwrap()).collect();
            Ok(decode_symbols(n, Variant::Normal, &code).0)
        }
        Family::Plane => Ok(sample_plane_tree(n, rng)),
    }
}

fn sample_plane_tree(n: usize, rng: &mut RandomSource) -> RootedTree {
    // n - 1 up-steps and n down-steps; exactly one rotation keeps every
    // proper prefix sum non-negative, and dropping its final down-step
    // leaves a uniform Dyck path of length 2(n - 1).
    let mut steps: Vec<i32> = std::iter::repeat_n(1, n - 1).chain(std::iter::repeat_n(-1, n)).collect();
    rng.shuffle(&mut steps);
    let (mut sum, mut min, mut argmin) = (0i32, 0i32, 0usize);
    for (i, s) in steps.iter().enumerate() {
        sum += s;
        if sum < min {
            min = sum;
            argmin = i + 1;
        }
    }
    let len = steps.len();
    steps.rotate_left(argmin % len);

    let mut labels: Vec<usize> = (0..n).collect();
    rng.shuffle(&mut labels);
    let mut parent = vec![usize::MAX; n];
    let mut stack = vec![labels[0]];
    let mut next = 1;
    for &s in &steps[..steps.len() - 1] {
        if s > 0 {
            let v = labels[next];
            next += 1;
            parent[v] = *stack.last().unwrap();
            stack.push(v);
        } else {
            stack.pop();
        }
    }
    RootedTree::from_parent_indices(labels[0], parent)
}
