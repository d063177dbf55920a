#![allow(dead_code)]

use slither_core::codec::prufer_decode;
use slither_core::{RootedTree, UnrootedTree};

/// Every sequence of `len` symbols from `1..=n`, in lexicographic order.
pub fn sequences(n: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = n.pow(len as u32);
    (0..total).map(move |mut k| {
        let mut seq = vec![0; len];
        for slot in seq.iter_mut().rev() {
            *slot = k % n + 1;
            k /= n;
        }
        seq
    })
}

/// All labelled trees on `n` vertices, via the classical Prüfer code.
pub fn all_unrooted(n: usize) -> Vec<UnrootedTree> {
    match n {
        1 => vec![UnrootedTree::new(1, &[]).unwrap()],
        _ => sequences(n, n - 2).map(|s| prufer_decode(&s).unwrap()).collect(),
    }
}

/// All rooted trees on `n` vertices: every Prüfer tree at every root.
/// Independent of the slither codec.
pub fn all_rooted(n: usize) -> Vec<RootedTree> {
    all_unrooted(n)
        .iter()
        .flat_map(|t| (1..=n).map(move |r| t.rooted_at(r)))
        .collect()
}

/// Lexicographic successor of a permutation of a multiset.
pub fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Every distinct ordering of a multiset.
pub fn distinct_orderings(mut cards: Vec<usize>) -> Vec<Vec<usize>> {
    cards.sort_unstable();
    let mut out = vec![cards.clone()];
    while next_permutation(&mut cards) {
        out.push(cards.clone());
    }
    out
}
