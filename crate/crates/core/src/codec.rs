//! Slither codes: Prüfer-type bijections between rooted trees on `1..=n`
//! and sequences of length `n - 1` over `1..=n`, one per game variant.
//!
//! Encoding removes the smallest-labelled leaf at each step and files it in
//! the leftmost free slot if it is a P-position of the original tree, the
//! rightmost free slot otherwise. The code records the parent of whatever
//! sits in each slot. The classical Prüfer code is kept alongside as an
//! independent baseline.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use thiserror::Error;

use crate::tree::{classify, RootedTree, UnrootedTree, Variant};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("symbol {symbol} outside 1..={n}")]
    SymbolOutOfRange { symbol: usize, n: usize },
    #[error("code for n = {n} must have length {expected}, got {got}")]
    WrongLength { n: usize, expected: usize, got: usize },
    #[error("n must be at least {min}, got {n}")]
    TooSmall { n: usize, min: usize },
    #[error("operation needs a capacity-{needed} code, got variant {got}")]
    VariantMismatch { needed: usize, got: Variant },
    #[error("capacity must be at least 1")]
    ZeroCapacity,
}

/// A variant-tagged code `s_1..s_{n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SlitherCode {
    n: usize,
    variant: Variant,
    symbols: Vec<usize>,
}

impl SlitherCode {
    /// Every sequence of length `n - 1` over `1..=n` is a valid code.
    pub fn new(n: usize, variant: Variant, symbols: Vec<usize>) -> Result<Self, CodecError> {
        if n == 0 {
            return Err(CodecError::TooSmall { n, min: 1 });
        }
        if symbols.len() != n - 1 {
            return Err(CodecError::WrongLength { n, expected: n - 1, got: symbols.len() });
        }
        check_symbols(&symbols, n)?;
        Ok(SlitherCode { n, variant, symbols })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn symbols(&self) -> &[usize] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<usize> {
        self.symbols
    }

    fn expect_capacity(&self, b: usize) -> Result<(), CodecError> {
        if self.variant.capacity() == b {
            Ok(())
        } else {
            Err(CodecError::VariantMismatch { needed: b, got: self.variant })
        }
    }
}

fn check_symbols(symbols: &[usize], n: usize) -> Result<(), CodecError> {
    match symbols.iter().find(|&&s| s == 0 || s > n) {
        Some(&symbol) => Err(CodecError::SymbolOutOfRange { symbol, n }),
        None => Ok(()),
    }
}

/// Removal order of the non-root vertices, laid out by slot: `a_i` is the
/// child whose parent is `s_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxiliarySequence(pub Vec<usize>);

pub fn slither_encode(tree: &RootedTree, variant: Variant) -> (SlitherCode, AuxiliarySequence) {
    let n = tree.n();
    let classes = classify(tree, variant);
    let mut pending: Vec<usize> = (0..n).map(|v| tree.child_indices(v).len()).collect();
    let root = tree.root_index();
    let mut leaves: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| pending[v] == 0 && v != root).map(Reverse).collect();

    let mut aux = vec![0usize; n - 1];
    let (mut left, mut right) = (0usize, n - 1);
    while let Some(Reverse(v)) = leaves.pop() {
        let slot = if classes.is_p_index(v) {
            left += 1;
            left - 1
        } else {
            right -= 1;
            right
        };
        aux[slot] = v;
        let p = tree.parent_index(v).expect("non-root vertex has a parent");
        pending[p] -= 1;
        if pending[p] == 0 && p != root {
            leaves.push(Reverse(p));
        }
    }
    debug_assert_eq!(left, right);

    let symbols = aux.iter().map(|&a| tree.parent_index(a).unwrap() + 1).collect();
    let aux = aux.into_iter().map(|a| a + 1).collect();
    (SlitherCode { n, variant, symbols }, AuxiliarySequence(aux))
}

/// Rebuilds the tree leaf-up. At each step the smallest finished, still
/// parentless vertex is attached to the symbol at the left end of the unread
/// code if its restored subtree makes it a P-position, else the right end.
pub fn slither_decode(code: &SlitherCode) -> RootedTree {
    decode_symbols(code.n, code.variant, &code.symbols).0
}

/// Decoding that also returns the auxiliary sequence.
pub fn slither_decode_with_aux(code: &SlitherCode) -> (RootedTree, AuxiliarySequence) {
    decode_symbols(code.n, code.variant, &code.symbols)
}

pub(crate) fn decode_symbols(n: usize, variant: Variant, symbols: &[usize]) -> (RootedTree, AuxiliarySequence) {
    debug_assert_eq!(symbols.len() + 1, n);
    let b = variant.capacity();
    let mut unread = vec![0usize; n];
    for &s in symbols {
        unread[s - 1] += 1;
    }
    let mut ready: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| unread[v] == 0).map(Reverse).collect();
    let mut parent = vec![usize::MAX; n];
    let mut p_children = vec![0usize; n];
    let mut aux = vec![0usize; n - 1];
    let (mut left, mut right) = (0usize, n - 1);

    for _ in 1..n {
        let Reverse(v) = ready.pop().expect("a finished parentless vertex always exists");
        let is_p = p_children[v] < b;
        let slot = if is_p {
            left += 1;
            left - 1
        } else {
            right -= 1;
            right
        };
        let p = symbols[slot] - 1;
        parent[v] = p;
        aux[slot] = v + 1;
        if is_p {
            p_children[p] += 1;
        }
        unread[p] -= 1;
        if unread[p] == 0 {
            ready.push(Reverse(p));
        }
    }
    let Reverse(root) = ready.pop().expect("root remains");
    (RootedTree::from_parent_indices(root, parent), AuxiliarySequence(aux))
}

/// Classical Prüfer code of an unrooted tree (length `n - 2`).
pub fn prufer_encode(tree: &UnrootedTree) -> Result<Vec<usize>, CodecError> {
    let n = tree.n();
    if n < 2 {
        return Err(CodecError::TooSmall { n, min: 2 });
    }
    let mut adj = vec![Vec::new(); n];
    let mut degree = vec![0usize; n];
    for &(u, v) in tree.edges() {
        adj[u - 1].push(v - 1);
        adj[v - 1].push(u - 1);
        degree[u - 1] += 1;
        degree[v - 1] += 1;
    }
    let mut removed = vec![false; n];
    let mut leaves: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut seq = Vec::with_capacity(n - 2);
    while seq.len() < n - 2 {
        let Reverse(leaf) = leaves.pop().expect("a tree with >= 3 vertices has a leaf");
        removed[leaf] = true;
        let nb = adj[leaf].iter().copied().find(|&w| !removed[w]).unwrap();
        seq.push(nb + 1);
        degree[nb] -= 1;
        if degree[nb] == 1 {
            leaves.push(Reverse(nb));
        }
    }
    Ok(seq)
}

/// Inverse of [`prufer_encode`]; `n` is the sequence length plus two.
pub fn prufer_decode(seq: &[usize]) -> Result<UnrootedTree, CodecError> {
    let n = seq.len() + 2;
    check_symbols(seq, n)?;
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s - 1] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let Reverse(leaf) = leaves.pop().unwrap();
        edges.push((leaf + 1, s));
        degree[s - 1] -= 1;
        if degree[s - 1] == 1 {
            leaves.push(Reverse(s - 1));
        }
    }
    let Reverse(u) = leaves.pop().unwrap();
    let Reverse(v) = leaves.pop().unwrap();
    edges.push((u + 1, v + 1));
    Ok(UnrootedTree::from_edges_unchecked(n, edges))
}

/// The coupon-collector stopping rule shared by the dice game and the code
/// reader: the smallest `alpha` such that the first `alpha` symbols contain
/// at least `n - alpha` distinct values. `None` if the sequence runs out
/// first. For `n = 1` the answer is 1 by convention.
pub fn coupon_alpha<I>(symbols: I, n: usize) -> Option<usize>
where
    I: IntoIterator<Item = usize>,
{
    if n <= 1 {
        return Some(1);
    }
    let mut seen = vec![false; n + 1];
    let mut distinct = 0;
    for (i, s) in symbols.into_iter().enumerate() {
        if !std::mem::replace(&mut seen[s], true) {
            distinct += 1;
        }
        let alpha = i + 1;
        if distinct + alpha >= n {
            return Some(alpha);
        }
    }
    None
}

/// Independence number of the tree encoded by a normal code.
pub fn read_alpha(code: &SlitherCode) -> Result<usize, CodecError> {
    code.expect_capacity(1)?;
    Ok(coupon_alpha(code.symbols.iter().copied(), code.n).expect("n - 1 symbols always suffice"))
}

/// Whether the root is a P- or N-position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootClass {
    P,
    N,
}

/// Everything that can be read from a normal code without decoding it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReadResult {
    pub alpha: usize,
    pub beta: usize,
    pub matching: usize,
    pub root: usize,
    pub root_class: RootClass,
    pub p_set: BTreeSet<usize>,
}

/// Reads the root, its class and the P-set from a normal code.
///
/// If the first `alpha - 1` symbols already hold `n - alpha` distinct values
/// and `s_alpha` is new, the root is `s_alpha` and a P-position. Otherwise
/// the root is an N-position: `s_{alpha+1}` when it repeats an earlier
/// symbol, else `s_alpha`. When `alpha = n - 1` there is no slot
/// `alpha + 1` and the root is `s_alpha`. For `n = 1` the single vertex is a
/// P-position root.
pub fn read_root_and_pset(code: &SlitherCode) -> Result<ReadResult, CodecError> {
    let alpha = read_alpha(code)?;
    let (beta, matching) = read_matching_via_beta(code)?;
    let n = code.n;
    if n == 1 {
        return Ok(ReadResult {
            alpha,
            beta,
            matching,
            root: 1,
            root_class: RootClass::P,
            p_set: BTreeSet::from([1]),
        });
    }
    let s = &code.symbols;
    let mut seen = vec![false; n + 1];
    for &x in &s[..alpha] {
        seen[x] = true;
    }
    let distinct = seen.iter().filter(|&&x| x).count();
    let (root, root_class, prefix) = if distinct > n - alpha {
        (s[alpha - 1], RootClass::P, alpha - 1)
    } else if alpha == n - 1 || !seen[s[alpha]] {
        (s[alpha - 1], RootClass::N, alpha)
    } else {
        (s[alpha], RootClass::N, alpha)
    };
    let mut occurs = vec![false; n + 1];
    for &x in &s[..prefix] {
        occurs[x] = true;
    }
    let p_set = (1..=n).filter(|&v| !occurs[v]).collect();
    Ok(ReadResult { alpha, beta, matching, root, root_class, p_set })
}

/// `(beta, value)` for the capacity-`b` reading rule: `beta` is the smallest
/// prefix length in which at least `n - 1 - beta` distinct symbols occur at
/// least `b` times; `value` counts that prefix with each symbol capped at
/// `b` occurrences.
pub fn capacity_reading(symbols: &[usize], n: usize, b: usize) -> Result<(usize, usize), CodecError> {
    if b == 0 {
        return Err(CodecError::ZeroCapacity);
    }
    if n <= 1 {
        return Ok((0, 0));
    }
    let mut count = vec![0usize; n + 1];
    let (mut saturated, mut value) = (0usize, 0usize);
    for beta in 0..n {
        if saturated + beta >= n - 1 {
            return Ok((beta, value));
        }
        let c = &mut count[symbols[beta]];
        *c += 1;
        if *c <= b {
            value += 1;
        }
        if *c == b {
            saturated += 1;
        }
    }
    unreachable!("beta = n - 1 always satisfies the rule")
}

/// `(beta, matching number)` from a normal code.
pub fn read_matching_via_beta(code: &SlitherCode) -> Result<(usize, usize), CodecError> {
    code.expect_capacity(1)?;
    capacity_reading(&code.symbols, code.n, 1)
}

/// `(beta, maximum path-collection size)` from a comply code.
pub fn read_path_edges(code: &SlitherCode) -> Result<(usize, usize), CodecError> {
    code.expect_capacity(2)?;
    capacity_reading(&code.symbols, code.n, 2)
}

/// `(beta, maximum capacity-b edge set size)` from a capacity-`b` code.
pub fn read_capacity_edges(code: &SlitherCode, b: usize) -> Result<(usize, usize), CodecError> {
    if b == 0 {
        return Err(CodecError::ZeroCapacity);
    }
    code.expect_capacity(b)?;
    capacity_reading(&code.symbols, code.n, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{independence_number, max_capacity_edges};

    const PI_CODE: [usize; 9] = [3, 1, 4, 1, 5, 9, 2, 6, 5];

    fn pi_tree() -> RootedTree {
        RootedTree::new(
            10,
            Some(9),
            &[(5, 9), (2, 5), (3, 5), (1, 2), (7, 3), (6, 1), (8, 1), (4, 6), (10, 4)],
        )
        .unwrap()
    }

    fn code(n: usize, variant: Variant, s: &[usize]) -> SlitherCode {
        SlitherCode::new(n, variant, s.to_vec()).unwrap()
    }

    #[test]
    fn pi_tree_encodes() {
        let (c, aux) = slither_encode(&pi_tree(), Variant::Normal);
        assert_eq!(c.symbols(), &PI_CODE);
        assert_eq!(aux.0, vec![7, 8, 10, 6, 2, 5, 1, 4, 3]);

        let (c, aux) = slither_encode(&pi_tree(), Variant::Comply);
        assert_eq!(c.symbols(), &[3, 5, 1, 4, 6, 1, 5, 9, 2]);
        assert_eq!(aux.0, vec![7, 3, 8, 10, 4, 6, 2, 5, 1]);
        assert_eq!(slither_decode(&c), pi_tree());
    }

    #[test]
    fn pi_tree_decodes() {
        let (t, aux) = slither_decode_with_aux(&code(10, Variant::Normal, &PI_CODE));
        assert_eq!(t, pi_tree());
        assert_eq!(t.root(), 9);
        assert_eq!(aux.0, vec![7, 8, 10, 6, 2, 5, 1, 4, 3]);
    }

    #[test]
    fn tiny_codes() {
        let edge = RootedTree::new(2, Some(1), &[(2, 1)]).unwrap();
        assert_eq!(slither_encode(&edge, Variant::Normal).0.symbols(), &[1]);
        let single = code(1, Variant::Normal, &[]);
        assert_eq!(slither_decode(&single), RootedTree::singleton());
        assert!(slither_encode(&RootedTree::singleton(), Variant::Comply).0.symbols().is_empty());
    }

    #[test]
    fn all_codes_at_three_decode_distinctly() {
        let mut trees = std::collections::HashSet::new();
        for a in 1..=3 {
            for b in 1..=3 {
                let t = slither_decode(&code(3, Variant::Normal, &[a, b]));
                trees.insert(format!("{t:?}"));
            }
        }
        assert_eq!(trees.len(), 9);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            SlitherCode::new(3, Variant::Normal, vec![1, 4]),
            Err(CodecError::SymbolOutOfRange { symbol: 4, n: 3 })
        );
        assert_eq!(
            SlitherCode::new(3, Variant::Normal, vec![1]),
            Err(CodecError::WrongLength { n: 3, expected: 2, got: 1 })
        );
        assert_eq!(prufer_decode(&[5]), Err(CodecError::SymbolOutOfRange { symbol: 5, n: 3 }));
    }

    #[test]
    fn prufer_baseline() {
        let edge = UnrootedTree::new(2, &[(1, 2)]).unwrap();
        assert_eq!(prufer_encode(&edge).unwrap(), Vec::<usize>::new());
        let star = UnrootedTree::new(4, &[(1, 2), (1, 3), (1, 4)]).unwrap();
        assert_eq!(prufer_encode(&star).unwrap(), vec![1, 1]);
        let mut trees = std::collections::HashSet::new();
        for a in 1..=4 {
            for b in 1..=4 {
                let t = prufer_decode(&[a, b]).unwrap();
                assert_eq!(prufer_encode(&t).unwrap(), vec![a, b]);
                trees.insert(t);
            }
        }
        assert_eq!(trees.len(), 16);
    }

    #[test]
    fn alpha_readings() {
        assert_eq!(read_alpha(&code(10, Variant::Normal, &PI_CODE)), Ok(6));
        assert_eq!(read_alpha(&code(4, Variant::Normal, &[1, 1, 1])), Ok(3));
        assert_eq!(read_alpha(&code(2, Variant::Normal, &[1])), Ok(1));
        assert_eq!(read_alpha(&code(1, Variant::Normal, &[])), Ok(1));
        assert!(matches!(
            read_alpha(&code(2, Variant::Comply, &[1])),
            Err(CodecError::VariantMismatch { needed: 1, .. })
        ));
    }

    #[test]
    fn root_and_pset_readings() {
        let r = read_root_and_pset(&code(10, Variant::Normal, &PI_CODE)).unwrap();
        assert_eq!((r.alpha, r.root, r.root_class), (6, 9, RootClass::P));
        assert_eq!(r.p_set, BTreeSet::from([2, 6, 7, 8, 9, 10]));

        let c = code(5, Variant::Normal, &[2, 2, 1, 1]);
        let t = RootedTree::new(5, Some(1), &[(5, 1), (2, 1), (3, 2), (4, 2)]).unwrap();
        assert_eq!(slither_encode(&t, Variant::Normal).0, c);
        let r = read_root_and_pset(&c).unwrap();
        assert_eq!((r.alpha, r.root, r.root_class), (3, 1, RootClass::N));
        assert_eq!(r.p_set, BTreeSet::from([3, 4, 5]));

        let r = read_root_and_pset(&code(4, Variant::Normal, &[1, 1, 1])).unwrap();
        assert_eq!((r.alpha, r.root, r.root_class), (3, 1, RootClass::N));
        assert_eq!(r.p_set, BTreeSet::from([2, 3, 4]));

        let r = read_root_and_pset(&code(1, Variant::Normal, &[])).unwrap();
        assert_eq!((r.root, r.root_class), (1, RootClass::P));
        assert_eq!(r.p_set, BTreeSet::from([1]));
    }

    #[test]
    fn beta_readings() {
        assert_eq!(read_matching_via_beta(&code(10, Variant::Normal, &PI_CODE)), Ok((5, 4)));
        assert_eq!(read_matching_via_beta(&code(2, Variant::Normal, &[1])), Ok((1, 1)));
        assert_eq!(read_matching_via_beta(&code(4, Variant::Normal, &[1, 1, 1])).unwrap().1, 1);

        let comply = code(10, Variant::Comply, &[3, 5, 1, 4, 6, 1, 5, 9, 2]);
        assert_eq!(read_path_edges(&comply), Ok((7, 7)));
        assert_eq!(read_path_edges(&code(2, Variant::Comply, &[1])).unwrap().1, 1);
        let cap2 = code(10, Variant::with_capacity(2).unwrap(), comply.symbols());
        assert_eq!(read_capacity_edges(&cap2, 2), Ok((7, 7)));
        assert_eq!(read_capacity_edges(&cap2, 0), Err(CodecError::ZeroCapacity));
        assert_eq!(
            read_capacity_edges(&code(10, Variant::Normal, &PI_CODE), 1),
            read_matching_via_beta(&code(10, Variant::Normal, &PI_CODE))
        );
    }

    #[test]
    fn readings_match_decoded_tree() {
        let c = code(10, Variant::Normal, &PI_CODE);
        let t = slither_decode(&c);
        assert_eq!(read_alpha(&c).unwrap(), independence_number(&t));
        let comply = code(10, Variant::Comply, &PI_CODE);
        let t = slither_decode(&comply);
        assert_eq!(read_path_edges(&comply).unwrap().1, max_capacity_edges(&t, 2).unwrap());
    }

    #[test]
    fn coupon_rule() {
        assert_eq!(coupon_alpha([1, 2, 9], 4), Some(2));
        assert_eq!(coupon_alpha([2, 2, 3], 4), Some(3));
        assert_eq!(coupon_alpha([2, 2], 4), None);
        assert_eq!(coupon_alpha([1], 2), Some(1));
    }
}
