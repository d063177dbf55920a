//! Labelled rooted trees and the Slither position classification.
//!
//! Vertices are labelled `1..=n` at every public interface. Internally the
//! tree keeps 0-based indices and a compressed child list sorted by label.

use std::collections::BTreeSet;
use std::fmt;
use std::num::NonZeroUsize;
use std::str::FromStr;

use thiserror::Error;

const NO_PARENT: usize = usize::MAX;

/// Largest vertex count accepted by the independent-set brute force.
pub const BF_VERTEX_LIMIT: usize = 20;
/// Largest vertex count accepted by the edge-subset brute force.
pub const BF_EDGE_LIMIT: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("tree must have at least one vertex")]
    Empty,
    #[error("label {label} outside 1..={n}")]
    LabelOutOfRange { label: usize, n: usize },
    #[error("vertex {0} has more than one parent entry")]
    DuplicateParent(usize),
    #[error("vertex {0} is its own parent")]
    SelfLoop(usize),
    #[error("no root: every vertex has a parent")]
    NoRoot,
    #[error("multiple roots: {0:?}")]
    MultipleRoots(Vec<usize>),
    #[error("declared root {root} has a parent entry")]
    RootHasParent { root: usize },
    #[error("disconnected: vertices {0:?} have no path to the root")]
    Disconnected(Vec<usize>),
    #[error("cycle through vertex {0}")]
    Cycle(usize),
    #[error("capacity must be at least 1")]
    ZeroCapacity,
    #[error("brute force limited to n <= {limit}, got {n}")]
    SizeLimit { n: usize, limit: usize },
}

/// Which flavour of Slither is being played.
///
/// `Normal` and `Capacity(1)` share a rule, as do `Comply` and `Capacity(2)`;
/// they are kept apart so that codes remember how they were produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Normal,
    Comply,
    Capacity(NonZeroUsize),
}

impl Variant {
    pub fn with_capacity(b: usize) -> Result<Self, TreeError> {
        NonZeroUsize::new(b)
            .map(Variant::Capacity)
            .ok_or(TreeError::ZeroCapacity)
    }

    /// Number of options a mover must offer; a vertex is P iff it has fewer
    /// P-children than this.
    pub fn capacity(self) -> usize {
        match self {
            Variant::Normal => 1,
            Variant::Comply => 2,
            Variant::Capacity(b) => b.get(),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::Normal => f.write_str("normal"),
            Variant::Comply => f.write_str("comply"),
            Variant::Capacity(b) => write!(f, "b={b}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown variant {0:?}: expected normal, comply or b=K with K >= 1")]
pub struct ParseVariantError(pub String);

impl FromStr for Variant {
    type Err = ParseVariantError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        match t {
            "normal" => Ok(Variant::Normal),
            "comply" => Ok(Variant::Comply),
            _ => t
                .strip_prefix("b=")
                .and_then(|k| k.parse::<usize>().ok())
                .and_then(NonZeroUsize::new)
                .map(Variant::Capacity)
                .ok_or_else(|| ParseVariantError(s.to_string())),
        }
    }
}

/// A tree on vertices `1..=n` with a distinguished root, edges directed
/// away from the root.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RootedTree {
    root: usize,
    parent: Vec<usize>,
    child_start: Vec<usize>,
    child_list: Vec<usize>,
}

impl fmt::Debug for RootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RootedTree")
            .field("n", &self.n())
            .field("root", &self.root())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl RootedTree {
    /// The tree with one vertex.
    pub fn singleton() -> Self {
        Self::from_parent_indices(0, vec![NO_PARENT])
    }

    /// Validates an edge list given as `(child, parent)` pairs.
    ///
    /// When `root` is `None` the unique vertex without a parent entry becomes
    /// the root.
    pub fn new(n: usize, root: Option<usize>, edges: &[(usize, usize)]) -> Result<Self, TreeError> {
        if n == 0 {
            return Err(TreeError::Empty);
        }
        let check = |label: usize| {
            if (1..=n).contains(&label) {
                Ok(label - 1)
            } else {
                Err(TreeError::LabelOutOfRange { label, n })
            }
        };
        let mut parent = vec![NO_PARENT; n];
        for &(c, p) in edges {
            let (ci, pi) = (check(c)?, check(p)?);
            if ci == pi {
                return Err(TreeError::SelfLoop(c));
            }
            if parent[ci] != NO_PARENT {
                return Err(TreeError::DuplicateParent(c));
            }
            parent[ci] = pi;
        }
        let parentless: Vec<usize> = (0..n).filter(|&v| parent[v] == NO_PARENT).collect();
        let root = match root {
            Some(r) => {
                let ri = check(r)?;
                if parent[ri] != NO_PARENT {
                    return Err(TreeError::RootHasParent { root: r });
                }
                if parentless.len() > 1 {
                    return Err(TreeError::Disconnected(
                        parentless.iter().filter(|&&v| v != ri).map(|v| v + 1).collect(),
                    ));
                }
                ri
            }
            None => match parentless.as_slice() {
                [] => return Err(TreeError::NoRoot),
                [r] => *r,
                many => return Err(TreeError::MultipleRoots(many.iter().map(|v| v + 1).collect())),
            },
        };
        // Exactly one parentless vertex remains; anything not reaching it lies on a cycle.
        let mut state = vec![0u8; n]; // 0 unvisited, 1 on current walk, 2 reaches root
        state[root] = 2;
        let mut walk = Vec::new();
        for start in 0..n {
            let mut v = start;
            while state[v] == 0 {
                state[v] = 1;
                walk.push(v);
                v = parent[v];
            }
            if state[v] == 1 {
                return Err(TreeError::Cycle(v + 1));
            }
            for &w in &walk {
                state[w] = 2;
            }
            walk.clear();
        }
        Ok(Self::from_parent_indices(root, parent))
    }

    /// Builds a tree from a 1-based parent array: `parents[i]` is the parent
    /// of vertex `i + 1`, `None` for the root.
    pub fn from_parents(parents: &[Option<usize>]) -> Result<Self, TreeError> {
        let edges: Vec<(usize, usize)> = parents
            .iter()
            .enumerate()
            .filter_map(|(i, p)| p.map(|p| (i + 1, p)))
            .collect();
        Self::new(parents.len(), None, &edges)
    }

    /// Trusted constructor over 0-based indices; callers guarantee validity.
    pub(crate) fn from_parent_indices(root: usize, parent: Vec<usize>) -> Self {
        let n = parent.len();
        let mut child_start = vec![0usize; n + 1];
        for &p in &parent {
            if p != NO_PARENT {
                child_start[p + 1] += 1;
            }
        }
        for i in 0..n {
            child_start[i + 1] += child_start[i];
        }
        let mut fill = child_start.clone();
        let mut child_list = vec![0usize; n.saturating_sub(1)];
        // Ascending child index keeps each child run sorted by label.
        for (c, &p) in parent.iter().enumerate() {
            if p != NO_PARENT {
                child_list[fill[p]] = c;
                fill[p] += 1;
            }
        }
        RootedTree { root, parent, child_start, child_list }
    }

    pub(crate) fn parent_index(&self, v: usize) -> Option<usize> {
        let p = self.parent[v];
        (p != NO_PARENT).then_some(p)
    }

    pub(crate) fn child_indices(&self, v: usize) -> &[usize] {
        &self.child_list[self.child_start[v]..self.child_start[v + 1]]
    }

    pub(crate) fn root_index(&self) -> usize {
        self.root
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> usize {
        self.root + 1
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent_index(v - 1).map(|p| p + 1)
    }

    /// Children of `v` in ascending label order.
    pub fn children(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.child_indices(v - 1).iter().map(|c| c + 1)
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.child_indices(v - 1).len()
    }

    /// `(child, parent)` pairs in ascending child order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parent
            .iter()
            .enumerate()
            .filter(|(_, &p)| p != NO_PARENT)
            .map(|(c, &p)| (c + 1, p + 1))
    }

    /// Vertex indices with every child before its parent. Iterative, so
    /// arbitrarily deep paths are fine.
    pub(crate) fn post_order(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.n());
        order.push(self.root);
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            order.extend_from_slice(self.child_indices(v));
        }
        order.reverse();
        order
    }

    /// The same underlying tree rooted at `new_root`.
    pub fn reroot(&self, new_root: usize) -> RootedTree {
        let n = self.n();
        assert!((1..=n).contains(&new_root), "root {new_root} outside 1..={n}");
        let mut parent = self.parent.clone();
        let mut v = new_root - 1;
        let mut prev = NO_PARENT;
        loop {
            let up = parent[v];
            parent[v] = prev;
            if up == NO_PARENT {
                break;
            }
            prev = v;
            v = up;
        }
        Self::from_parent_indices(new_root - 1, parent)
    }

    /// Forgets the root.
    pub fn to_unrooted(&self) -> UnrootedTree {
        UnrootedTree::from_edges_unchecked(self.n(), self.edges().collect())
    }
}

/// A labelled tree without a root, stored as a sorted list of edges
/// `(u, v)` with `u < v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnrootedTree {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl UnrootedTree {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, TreeError> {
        if n == 0 {
            return Err(TreeError::Empty);
        }
        // Orient from vertex 1 and reuse rooted validation.
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for x in [u, v] {
                if !(1..=n).contains(&x) {
                    return Err(TreeError::LabelOutOfRange { label: x, n });
                }
            }
            if u == v {
                return Err(TreeError::SelfLoop(u));
            }
            adj[u - 1].push(v - 1);
            adj[v - 1].push(u - 1);
        }
        if edges.len() != n - 1 {
            // Too many edges on n vertices means a cycle; too few means disconnected.
            return Err(if edges.len() >= n {
                TreeError::Cycle(edges[0].0)
            } else {
                let seen = reachable(&adj, 0);
                TreeError::Disconnected((0..n).filter(|&v| !seen[v]).map(|v| v + 1).collect())
            });
        }
        let seen = reachable(&adj, 0);
        let missing: Vec<usize> = (0..n).filter(|&v| !seen[v]).map(|v| v + 1).collect();
        if !missing.is_empty() {
            return Err(TreeError::Disconnected(missing));
        }
        Ok(Self::from_edges_unchecked(n, edges.to_vec()))
    }

    pub(crate) fn from_edges_unchecked(n: usize, mut edges: Vec<(usize, usize)>) -> Self {
        for e in edges.iter_mut() {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        UnrootedTree { n, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn rooted_at(&self, root: usize) -> RootedTree {
        assert!((1..=self.n).contains(&root), "root {root} outside 1..={}", self.n);
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u - 1].push(v - 1);
            adj[v - 1].push(u - 1);
        }
        let mut parent = vec![NO_PARENT; self.n];
        let mut seen = vec![false; self.n];
        let mut stack = vec![root - 1];
        seen[root - 1] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = v;
                    stack.push(w);
                }
            }
        }
        RootedTree::from_parent_indices(root - 1, parent)
    }
}

fn reachable(adj: &[Vec<usize>], start: usize) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen
}

/// Game value of a vertex. `P(k)` is a previous-player win with `k`
/// P-children; in normal play `k` is always 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Position {
    P(usize),
    N,
}

impl Position {
    pub fn is_p(self) -> bool {
        matches!(self, Position::P(_))
    }
}

/// Classification of every vertex of a tree under one variant of Slither.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositionMap {
    variant: Variant,
    classes: Vec<Position>,
    p_children: Vec<usize>,
}

impl PositionMap {
    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn class(&self, v: usize) -> Position {
        self.classes[v - 1]
    }

    /// Number of P-children of `v` (for N-vertices this is at least the capacity).
    pub fn p_children(&self, v: usize) -> usize {
        self.p_children[v - 1]
    }

    pub(crate) fn is_p_index(&self, v: usize) -> bool {
        self.classes[v].is_p()
    }

    /// `"P"`/`"N"` in normal play, `"P0"`, `"P1"`, ... otherwise.
    pub fn label(&self, v: usize) -> String {
        match (self.variant, self.class(v)) {
            (_, Position::N) => "N".to_string(),
            (Variant::Normal, Position::P(_)) => "P".to_string(),
            (_, Position::P(k)) => format!("P{k}"),
        }
    }

    pub fn p_set(&self) -> BTreeSet<usize> {
        self.vertices_where(Position::is_p)
    }

    pub fn n_set(&self) -> BTreeSet<usize> {
        self.vertices_where(|c| !c.is_p())
    }

    /// Vertices that are P with exactly `k` P-children.
    pub fn p_set_with(&self, k: usize) -> BTreeSet<usize> {
        self.vertices_where(|c| c == Position::P(k))
    }

    pub fn count_p(&self) -> usize {
        self.classes.iter().filter(|c| c.is_p()).count()
    }

    pub fn count_n(&self) -> usize {
        self.classes.len() - self.count_p()
    }

    fn vertices_where(&self, f: impl Fn(Position) -> bool) -> BTreeSet<usize> {
        (1..=self.classes.len()).filter(|&v| f(self.classes[v - 1])).collect()
    }
}

/// Classifies every vertex from the leaves up: a vertex is P iff it has
/// fewer P-children than the variant's capacity.
pub fn classify(tree: &RootedTree, variant: Variant) -> PositionMap {
    let b = variant.capacity();
    let n = tree.n();
    let mut classes = vec![Position::N; n];
    let mut p_children = vec![0usize; n];
    for v in tree.post_order() {
        let k = p_children[v];
        if k < b {
            classes[v] = Position::P(k);
            if let Some(p) = tree.parent_index(v) {
                p_children[p] += 1;
            }
        }
    }
    PositionMap { variant, classes, p_children }
}

pub fn independence_number(tree: &RootedTree) -> usize {
    classify(tree, Variant::Normal).count_p()
}

pub fn matching_number(tree: &RootedTree) -> usize {
    classify(tree, Variant::Normal).count_n()
}

/// A maximum matching as `(parent, child)` edges, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingCertificate {
    pub edges: Vec<(usize, usize)>,
}

impl MatchingCertificate {
    pub fn size(&self) -> usize {
        self.edges.len()
    }
}

/// Pairs each N-vertex with its smallest-labelled P-child.
pub fn matching_certificate(tree: &RootedTree) -> MatchingCertificate {
    let classes = classify(tree, Variant::Normal);
    let edges = (0..tree.n())
        .filter(|&v| !classes.is_p_index(v))
        .map(|v| {
            let c = tree
                .child_indices(v)
                .iter()
                .copied()
                .find(|&c| classes.is_p_index(c))
                .expect("an N-vertex has a P-child");
            (v + 1, c + 1)
        })
        .collect();
    MatchingCertificate { edges }
}

/// An optimal capacity-`b` edge set read off the game: every P-vertex keeps
/// all its edges to P-children, every N-vertex keeps edges to its `b`
/// smallest P-children.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategicSet {
    pub b: usize,
    /// `(parent, child)` pairs, sorted.
    pub edges: Vec<(usize, usize)>,
}

pub fn strategic_set(tree: &RootedTree, b: usize) -> Result<StrategicSet, TreeError> {
    let classes = classify(tree, Variant::with_capacity(b)?);
    let mut edges = Vec::new();
    for v in 0..tree.n() {
        let take = if classes.is_p_index(v) { usize::MAX } else { b };
        edges.extend(
            tree.child_indices(v)
                .iter()
                .filter(|&&c| classes.is_p_index(c))
                .take(take)
                .map(|&c| (v + 1, c + 1)),
        );
    }
    Ok(StrategicSet { b, edges })
}

/// Size of a maximum edge set with at most `b` edges at any vertex.
///
/// Each N-vertex contributes `b` edges and each P-vertex one per P-child;
/// for `b = 2` this is `2|N| + |P1|`.
pub fn max_capacity_edges(tree: &RootedTree, b: usize) -> Result<usize, TreeError> {
    let classes = classify(tree, Variant::with_capacity(b)?);
    Ok((0..tree.n())
        .map(|v| match classes.classes[v] {
            Position::N => b,
            Position::P(k) => k,
        })
        .sum())
}

/// Minimum number of vertex-disjoint paths covering the tree.
pub fn path_cover_number(tree: &RootedTree) -> usize {
    tree.n() - max_capacity_edges(tree, 2).expect("capacity 2 is valid")
}

/// A minimum path cover: the components of the capacity-2 strategic set.
/// Each path runs from its smaller endpoint; paths are sorted by first vertex.
pub fn path_cover_decomposition(tree: &RootedTree) -> Vec<Vec<usize>> {
    let n = tree.n();
    let set = strategic_set(tree, 2).expect("capacity 2 is valid");
    let mut adj = vec![Vec::with_capacity(2); n];
    for &(p, c) in &set.edges {
        adj[p - 1].push(c - 1);
        adj[c - 1].push(p - 1);
    }
    let mut used = vec![false; n];
    let mut paths = Vec::new();
    // Visiting endpoints in label order starts every path at its smaller end.
    for start in 0..n {
        if used[start] || adj[start].len() > 1 {
            continue;
        }
        let mut path = vec![start + 1];
        used[start] = true;
        let mut prev = start;
        let mut cur = adj[start].first().copied();
        while let Some(v) = cur {
            used[v] = true;
            path.push(v + 1);
            cur = adj[v].iter().copied().find(|&w| w != prev);
            prev = v;
        }
        paths.push(path);
    }
    debug_assert!(used.iter().all(|&u| u), "strategic set components are paths");
    paths
}

/// Exhaustive maximum independent set size. Independent of [`classify`].
pub fn bf_max_independent(tree: &RootedTree) -> Result<usize, TreeError> {
    let n = tree.n();
    if n > BF_VERTEX_LIMIT {
        return Err(TreeError::SizeLimit { n, limit: BF_VERTEX_LIMIT });
    }
    let mut nbr = vec![0u32; n];
    for (c, p) in tree.edges() {
        nbr[c - 1] |= 1 << (p - 1);
        nbr[p - 1] |= 1 << (c - 1);
    }
    let best = (0u32..1 << n)
        .filter(|&s| (0..n).all(|v| s >> v & 1 == 0 || nbr[v] & s == 0))
        .map(|s| s.count_ones())
        .max()
        .unwrap_or(0);
    Ok(best as usize)
}

/// Exhaustive maximum size of an edge set with vertex degrees at most `b`.
pub fn bf_max_capacity_edges(tree: &RootedTree, b: usize) -> Result<usize, TreeError> {
    if b == 0 {
        return Err(TreeError::ZeroCapacity);
    }
    let n = tree.n();
    if n > BF_EDGE_LIMIT {
        return Err(TreeError::SizeLimit { n, limit: BF_EDGE_LIMIT });
    }
    let edges: Vec<(usize, usize)> = tree.edges().map(|(c, p)| (c - 1, p - 1)).collect();
    let mut deg = vec![0usize; n];
    let mut best = 0;
    for s in 0u32..1 << edges.len() {
        let size = s.count_ones() as usize;
        if size <= best {
            continue;
        }
        deg.iter_mut().for_each(|d| *d = 0);
        let ok = edges.iter().enumerate().filter(|(i, _)| s >> i & 1 == 1).all(|(_, &(u, v))| {
            deg[u] += 1;
            deg[v] += 1;
            deg[u] <= b && deg[v] <= b
        });
        if ok {
            best = size;
        }
    }
    Ok(best)
}
