//! Trees over finite sequences.
//!
//! An [`ExplicitTree`] is a finite prefix-closed node set. A
//! [`GeneratedTree`] is a membership oracle explored through a depth window.
//! Both answer the finite-depth probes in [`TreeQuery`]: nodes at a depth,
//! depth-`d` well-foundedness, `d`-splitting and the kernel probe.

mod generated;
mod splitting;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{ClosureReport, Error, Result};
use crate::seqcode::{is_prefix, FinSeq};

pub use generated::{GeneratedTree, DEFAULT_NODE_CAP};
pub use splitting::splitting_ranks;

/// A finite set of sequences closed under initial segments.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct ExplicitTree {
    nodes: BTreeSet<FinSeq>,
}

impl ExplicitTree {
    pub fn empty() -> Self {
        ExplicitTree::default()
    }

    /// Validates prefix closure; see [`check_tree`].
    pub fn from_nodes<I: IntoIterator<Item = FinSeq>>(nodes: I) -> Result<Self> {
        check_tree(nodes.into_iter().collect())
    }

    /// Adds every missing prefix.
    pub fn closure_of<I: IntoIterator<Item = FinSeq>>(nodes: I) -> Self {
        let mut set = BTreeSet::new();
        for node in nodes {
            if set.contains(&node) {
                continue;
            }
            for p in node.proper_prefixes() {
                set.insert(p);
            }
            set.insert(node);
        }
        ExplicitTree { nodes: set }
    }

    /// Caller guarantees prefix closure.
    pub(crate) fn from_closed_set(nodes: BTreeSet<FinSeq>) -> Self {
        debug_assert!(check_tree(nodes.clone()).is_ok());
        ExplicitTree { nodes }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, seq: &FinSeq) -> bool {
        self.nodes.contains(seq)
    }

    /// Nodes in lexicographic order, which is a preorder walk.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = &FinSeq> + '_ {
        self.nodes.iter()
    }

    pub fn nodes(&self) -> &BTreeSet<FinSeq> {
        &self.nodes
    }

    pub fn into_nodes(self) -> BTreeSet<FinSeq> {
        self.nodes
    }

    /// All nodes extending `seq`, including `seq` itself when present.
    pub fn extensions<'a>(&'a self, seq: &'a FinSeq) -> impl Iterator<Item = &'a FinSeq> + 'a {
        self.nodes.range(seq.clone()..).take_while(move |t| is_prefix(seq, t))
    }

    /// Immediate children of `seq`, in increasing order of the last entry.
    pub fn children<'a>(&'a self, seq: &'a FinSeq) -> impl Iterator<Item = &'a FinSeq> + 'a {
        let n = seq.len() + 1;
        self.extensions(seq).filter(move |t| t.len() == n)
    }

    pub fn has_children(&self, seq: &FinSeq) -> bool {
        self.extensions(seq).nth(1).is_some()
    }

    /// Length of the longest node, or `None` for the empty tree.
    pub fn height(&self) -> Option<usize> {
        self.nodes.iter().map(FinSeq::len).max()
    }

    /// Exact leaf set. A node is a leaf iff its lexicographic successor does
    /// not extend it.
    pub fn leaves(&self) -> BTreeSet<FinSeq> {
        let mut out = BTreeSet::new();
        let mut it = self.nodes.iter().peekable();
        while let Some(node) = it.next() {
            match it.peek() {
                Some(next) if is_prefix(node, next) => {}
                _ => {
                    out.insert(node.clone());
                }
            }
        }
        out
    }

    /// Parent-to-children index over the whole tree.
    pub fn child_index(&self) -> BTreeMap<&FinSeq, Vec<&FinSeq>> {
        let mut map: BTreeMap<&FinSeq, Vec<&FinSeq>> = BTreeMap::new();
        for node in &self.nodes {
            map.entry(node).or_default();
        }
        // Parents precede children in lexicographic order, so a stack of the
        // current root path finds each parent.
        let mut path: Vec<&FinSeq> = Vec::new();
        for node in &self.nodes {
            while let Some(top) = path.last() {
                if top.len() < node.len() && is_prefix(top, node) {
                    break;
                }
                path.pop();
            }
            if let Some(parent) = path.last() {
                map.get_mut(parent).expect("parent indexed").push(node);
            }
            path.push(node);
        }
        map
    }

    /// Whether every node has at most one child.
    pub fn is_non_branching(&self) -> bool {
        self.child_index().values().all(|c| c.len() <= 1)
    }
}

impl fmt::Debug for ExplicitTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.nodes.iter()).finish()
    }
}

impl Serialize for ExplicitTree {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.nodes.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExplicitTree {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let nodes = Vec::<FinSeq>::deserialize(d)?;
        check_tree(nodes.into_iter().collect()).map_err(serde::de::Error::custom)
    }
}

/// Accepts a node set iff it is prefix-closed. The violation report lists each
/// node whose immediate prefix is missing, with all of its missing prefixes.
pub fn check_tree(nodes: BTreeSet<FinSeq>) -> Result<ExplicitTree> {
    let mut violations = Vec::new();
    for node in &nodes {
        let Some(parent) = node.parent() else { continue };
        if nodes.contains(&parent) {
            continue;
        }
        let missing = node.proper_prefixes().filter(|p| !nodes.contains(p)).collect();
        violations.push((node.clone(), missing));
    }
    if violations.is_empty() {
        Ok(ExplicitTree { nodes })
    } else {
        Err(Error::NotClosed(ClosureReport { violations }))
    }
}

/// A function `b` with `σ(i) ≤ b(i)` for every node `σ` and `i < |σ|`.
#[derive(Clone)]
pub struct BoundingFunction(Arc<dyn Fn(usize) -> u64 + Send + Sync>);

impl BoundingFunction {
    pub fn from_fn(f: impl Fn(usize) -> u64 + Send + Sync + 'static) -> Self {
        BoundingFunction(Arc::new(f))
    }

    pub fn constant(c: u64) -> Self {
        Self::from_fn(move |_| c)
    }

    /// `b(i) = values[i]`, repeating the last value past the end.
    pub fn from_vec(values: Vec<u64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::rejected("bound vector must be nonempty"));
        }
        Ok(Self::from_fn(move |i| values[i.min(values.len() - 1)]))
    }

    /// The pointwise least bound for `tree`: the largest entry seen at each
    /// position, and 0 past the height.
    pub fn tightest(tree: &ExplicitTree) -> Self {
        let mut max = Vec::new();
        for node in tree.iter() {
            for (i, &x) in node.entries().iter().enumerate() {
                if max.len() <= i {
                    max.push(0);
                }
                max[i] = max[i].max(x);
            }
        }
        Self::from_fn(move |i| max.get(i).copied().unwrap_or(0))
    }

    pub fn at(&self, i: usize) -> u64 {
        (self.0)(i)
    }

    /// First node and position where the bound fails, if any.
    pub fn first_violation(&self, tree: &ExplicitTree) -> Option<(FinSeq, usize)> {
        tree.iter().find_map(|node| {
            node.entries()
                .iter()
                .enumerate()
                .find(|&(i, &x)| x > self.at(i))
                .map(|(i, _)| (node.clone(), i))
        })
    }
}

impl fmt::Debug for BoundingFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head: Vec<u64> = (0..4).map(|i| self.at(i)).collect();
        write!(f, "BoundingFunction({head:?}..)")
    }
}

/// Leaf set of a bounded tree, checking only the extensions `σ⌢j` with
/// `j ≤ b(|σ|)`.
pub fn bleaf(tree: &ExplicitTree, bound: &BoundingFunction) -> Result<BTreeSet<FinSeq>> {
    if let Some((node, i)) = bound.first_violation(tree) {
        return Err(Error::rejected(format!(
            "bounding function fails at {node}, position {i}: {} > {}",
            node.entries()[i],
            bound.at(i)
        )));
    }
    Ok(tree
        .iter()
        .filter(|node| (0..=bound.at(node.len())).all(|j| !tree.contains(&node.child(j))))
        .cloned()
        .collect())
}

/// Leaf set by comparing every pair of nodes.
pub fn leaf_brute(tree: &ExplicitTree) -> BTreeSet<FinSeq> {
    tree.iter()
        .filter(|s| !tree.iter().any(|t| t.len() > s.len() && is_prefix(s, t)))
        .cloned()
        .collect()
}

/// A tree together with its leaf set. For windows onto generated trees,
/// `frontier` holds the boundary nodes that may have children outside the
/// window; for explicit trees it is empty.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TreeWithLeaves {
    pub tree: ExplicitTree,
    pub leaves: BTreeSet<FinSeq>,
    pub frontier: BTreeSet<FinSeq>,
}

impl TreeWithLeaves {
    /// An explicit tree with its exact leaf set.
    pub fn exact(tree: ExplicitTree) -> Self {
        let leaves = tree.leaves();
        TreeWithLeaves { tree, leaves, frontier: BTreeSet::new() }
    }

    /// Checks that leaves are childless members, frontier nodes are members
    /// disjoint from the leaves, and every maximal node is classified.
    pub fn new(
        tree: ExplicitTree,
        leaves: BTreeSet<FinSeq>,
        frontier: BTreeSet<FinSeq>,
    ) -> Result<Self> {
        for l in &leaves {
            if !tree.contains(l) {
                return Err(Error::rejected(format!("leaf {l} is not in the tree")));
            }
            if tree.has_children(l) {
                return Err(Error::rejected(format!("leaf {l} has children")));
            }
        }
        for f in &frontier {
            if !tree.contains(f) {
                return Err(Error::rejected(format!("frontier node {f} is not in the tree")));
            }
            if leaves.contains(f) {
                return Err(Error::rejected(format!("{f} is both leaf and frontier")));
            }
        }
        for m in tree.leaves() {
            if !leaves.contains(&m) && !frontier.contains(&m) {
                return Err(Error::rejected(format!("maximal node {m} is neither leaf nor frontier")));
            }
        }
        Ok(TreeWithLeaves { tree, leaves, frontier })
    }

    /// Treats the frontier as genuine leaves, yielding an explicit finite tree
    /// with its exact leaf set.
    pub fn into_finite(self) -> Self {
        TreeWithLeaves::exact(self.tree)
    }

    /// Whether `seq` is in the tree and not a leaf.
    pub fn is_internal(&self, seq: &FinSeq) -> bool {
        self.tree.contains(seq) && !self.leaves.contains(seq)
    }
}

#[derive(Serialize, Deserialize)]
struct TreeWithLeavesRepr {
    nodes: Vec<FinSeq>,
    #[serde(default)]
    leaves: Vec<FinSeq>,
    #[serde(default)]
    frontier: Vec<FinSeq>,
}

impl Serialize for TreeWithLeaves {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TreeWithLeavesRepr {
            nodes: self.tree.iter().cloned().collect(),
            leaves: self.leaves.iter().cloned().collect(),
            frontier: self.frontier.iter().cloned().collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TreeWithLeaves {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = TreeWithLeavesRepr::deserialize(d)?;
        let tree = check_tree(repr.nodes.into_iter().collect()).map_err(serde::de::Error::custom)?;
        TreeWithLeaves::new(tree, repr.leaves.into_iter().collect(), repr.frontier.into_iter().collect())
            .map_err(serde::de::Error::custom)
    }
}

/// Finite-depth probes shared by explicit and generated trees.
pub trait TreeQuery {
    /// All members of length exactly `d`.
    fn nodes_at_depth(&self, d: usize) -> Result<BTreeSet<FinSeq>>;

    /// Depth-`d` well-foundedness certificate: no member of length `d`.
    fn wf_probe(&self, d: usize) -> Result<bool> {
        Ok(self.nodes_at_depth(d)?.is_empty())
    }

    /// `d = 0`: membership. `d > 0`: two incompatible proper extensions of
    /// `seq`, each with `(d-1)`-splitting.
    fn has_d_splitting(&self, seq: &FinSeq, d: usize) -> Result<bool>;

    /// Members with `d`-splitting.
    fn kernel_probe(&self, d: usize) -> Result<BTreeSet<FinSeq>>;
}

impl TreeQuery for ExplicitTree {
    fn nodes_at_depth(&self, d: usize) -> Result<BTreeSet<FinSeq>> {
        Ok(self.iter().filter(|s| s.len() == d).cloned().collect())
    }

    fn has_d_splitting(&self, seq: &FinSeq, d: usize) -> Result<bool> {
        if !self.contains(seq) {
            return Ok(false);
        }
        Ok(splitting::rank_of(self, seq) >= d)
    }

    fn kernel_probe(&self, d: usize) -> Result<BTreeSet<FinSeq>> {
        Ok(splitting_ranks(self)
            .into_iter()
            .filter(|&(_, r)| r >= d)
            .map(|(s, _)| s.clone())
            .collect())
    }
}

/// See [`TreeQuery::nodes_at_depth`].
pub fn nodes_at_depth<T: TreeQuery + ?Sized>(tree: &T, d: usize) -> Result<BTreeSet<FinSeq>> {
    tree.nodes_at_depth(d)
}

/// See [`TreeQuery::wf_probe`].
pub fn wf_probe<T: TreeQuery + ?Sized>(tree: &T, d: usize) -> Result<bool> {
    tree.wf_probe(d)
}

/// See [`TreeQuery::has_d_splitting`].
pub fn has_d_splitting<T: TreeQuery + ?Sized>(tree: &T, seq: &FinSeq, d: usize) -> Result<bool> {
    tree.has_d_splitting(seq, d)
}

/// See [`TreeQuery::kernel_probe`].
pub fn kernel_probe<T: TreeQuery + ?Sized>(tree: &T, d: usize) -> Result<BTreeSet<FinSeq>> {
    tree.kernel_probe(d)
}

/// Window of depth `d` onto a generated tree; see [`GeneratedTree::truncate`].
pub fn truncate(tree: &GeneratedTree, d: usize) -> Result<TreeWithLeaves> {
    tree.truncate(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s<const N: usize>(v: [u64; N]) -> FinSeq {
        FinSeq::from(v)
    }

    fn tree(nodes: &[&[u64]]) -> ExplicitTree {
        ExplicitTree::from_nodes(nodes.iter().map(|n| FinSeq::new(n.to_vec()))).unwrap()
    }

    fn full_binary(h: usize) -> ExplicitTree {
        let mut nodes = vec![FinSeq::empty()];
        let mut layer = vec![FinSeq::empty()];
        for _ in 0..h {
            layer = layer.iter().flat_map(|n| [n.child(0), n.child(1)]).collect();
            nodes.extend(layer.iter().cloned());
        }
        ExplicitTree::from_nodes(nodes).unwrap()
    }

    fn path(n: usize) -> ExplicitTree {
        ExplicitTree::from_nodes((0..=n).map(|k| FinSeq::new(vec![0; k]))).unwrap()
    }

    #[test]
    fn check_tree_examples() {
        assert!(check_tree([FinSeq::empty(), s([0])].into()).is_ok());
        assert!(check_tree(BTreeSet::new()).unwrap().is_empty());
        match check_tree([s([0, 1])].into()) {
            Err(Error::NotClosed(report)) => {
                assert_eq!(report.violations, vec![(s([0, 1]), vec![FinSeq::empty(), s([0])])]);
            }
            other => panic!("expected violation, got {other:?}"),
        }
    }

    #[test]
    fn closure_completes_prefixes() {
        let t = ExplicitTree::closure_of([s([0, 1]), s([2])]);
        assert_eq!(t.len(), 4);
        assert!(t.contains(&FinSeq::empty()) && t.contains(&s([0])));
    }

    #[test]
    fn bleaf_examples() {
        let t = tree(&[&[], &[0], &[1], &[0, 2]]);
        let b = BoundingFunction::from_fn(|i| i as u64 + 1);
        assert_eq!(bleaf(&t, &b).unwrap(), [s([1]), s([0, 2])].into());
        assert!(bleaf(&ExplicitTree::empty(), &b).unwrap().is_empty());
        assert_eq!(bleaf(&tree(&[&[]]), &b).unwrap(), [FinSeq::empty()].into());
    }

    #[test]
    fn bleaf_rejects_violated_bound() {
        let t = tree(&[&[], &[3]]);
        assert!(matches!(bleaf(&t, &BoundingFunction::constant(2)), Err(Error::Rejected(_))));
    }

    #[test]
    fn bleaf_uses_bound_at_the_child_position() {
        // b(0) = 5, b(1) = 0. The child ⟨5⟩ of the root sits at position 0, so
        // only b(0) reveals it; checking against b(1) would call the root a leaf.
        let t = tree(&[&[], &[5]]);
        let b = BoundingFunction::from_vec(vec![5, 0]).unwrap();
        assert_eq!(bleaf(&t, &b).unwrap(), [s([5])].into());
    }

    #[test]
    fn leaf_brute_examples() {
        let t = tree(&[&[], &[0], &[1], &[0, 2]]);
        assert_eq!(leaf_brute(&t), [s([1]), s([0, 2])].into());
        assert_eq!(leaf_brute(&tree(&[&[]])), [FinSeq::empty()].into());
        assert!(leaf_brute(&ExplicitTree::empty()).is_empty());
        assert_eq!(t.leaves(), leaf_brute(&t));
    }

    #[test]
    fn nodes_at_depth_examples() {
        assert_eq!(
            nodes_at_depth(&full_binary(2), 2).unwrap(),
            [s([0, 0]), s([0, 1]), s([1, 0]), s([1, 1])].into()
        );
        assert!(nodes_at_depth(&tree(&[&[]]), 1).unwrap().is_empty());
        assert_eq!(nodes_at_depth(&path(5), 3).unwrap(), [s([0, 0, 0])].into());
    }

    #[test]
    fn wf_probe_examples() {
        assert!(!wf_probe(&full_binary(4), 4).unwrap());
        assert!(wf_probe(&tree(&[&[], &[0]]), 2).unwrap());
        assert!(wf_probe(&ExplicitTree::empty(), 0).unwrap());
    }

    #[test]
    fn splitting_examples() {
        let t = full_binary(2);
        let root = FinSeq::empty();
        assert!(has_d_splitting(&t, &root, 2).unwrap());
        assert!(!has_d_splitting(&t, &root, 3).unwrap());
        let p = path(6);
        for n in p.iter() {
            assert!(!has_d_splitting(&p, n, 1).unwrap());
            assert!(has_d_splitting(&p, n, 0).unwrap());
        }
        assert!(!has_d_splitting(&p, &s([1]), 0).unwrap());
    }

    #[test]
    fn splitting_uses_deep_witnesses() {
        // The root has one child but its grandchildren split.
        let t = tree(&[&[], &[0], &[0, 0], &[0, 1]]);
        assert!(has_d_splitting(&t, &FinSeq::empty(), 1).unwrap());
        assert!(!has_d_splitting(&t, &FinSeq::empty(), 2).unwrap());
    }

    #[test]
    fn kernel_probe_examples() {
        let t = full_binary(4);
        let expect: BTreeSet<FinSeq> = t.iter().filter(|n| n.len() <= 2).cloned().collect();
        assert_eq!(kernel_probe(&t, 2).unwrap(), expect);
        assert!(kernel_probe(&path(5), 1).unwrap().is_empty());
        assert_eq!(kernel_probe(&t, 0).unwrap(), t.nodes().clone());
    }

    #[test]
    fn child_index_matches_children() {
        let t = tree(&[&[], &[0], &[0, 0], &[0, 3], &[2], &[2, 1, 1], &[2, 1]]);
        let idx = t.child_index();
        for n in t.iter() {
            let a: Vec<&FinSeq> = t.children(n).collect();
            assert_eq!(idx[n], a);
        }
        assert!(!t.is_non_branching());
        assert!(path(3).is_non_branching());
    }

    #[test]
    fn tree_with_leaves_validation() {
        let t = tree(&[&[], &[0]]);
        assert!(TreeWithLeaves::new(t.clone(), [s([0])].into(), BTreeSet::new()).is_ok());
        assert!(TreeWithLeaves::new(t.clone(), BTreeSet::new(), [s([0])].into()).is_ok());
        assert!(TreeWithLeaves::new(t.clone(), [FinSeq::empty()].into(), BTreeSet::new()).is_err());
        assert!(TreeWithLeaves::new(t.clone(), BTreeSet::new(), BTreeSet::new()).is_err());
        assert!(TreeWithLeaves::new(t, [s([0])].into(), [s([0])].into()).is_err());
    }

    #[test]
    fn json_formats() {
        let t: ExplicitTree = serde_json::from_str("[[],[0],[1],[0,2]]").unwrap();
        assert_eq!(t.len(), 4);
        assert!(serde_json::from_str::<ExplicitTree>("[[0,1]]").is_err());
        let tl = TreeWithLeaves::exact(t);
        let text = serde_json::to_string(&tl).unwrap();
        assert_eq!(text, r#"{"nodes":[[],[0],[0,2],[1]],"leaves":[[0,2],[1]],"frontier":[]}"#);
        let back: TreeWithLeaves = serde_json::from_str(&text).unwrap();
        assert_eq!(back, tl);
    }
}
