//! Brute-force reference answers, written without the rank recursion or any
//! other shortcut used by the library.

use std::collections::BTreeSet;

use crate::seqcode::{incompatible, is_prefix, FinSeq};
use crate::trees::ExplicitTree;

/// `levels[d]` is the set of nodes with `d`-splitting, for `d ≤ max_d`,
/// straight from the definition: level 0 is the tree, and a node is in level
/// `d` when two incompatible proper extensions of it are in level `d - 1`.
pub fn splitting_levels(tree: &ExplicitTree, max_d: usize) -> Vec<BTreeSet<FinSeq>> {
    let mut levels = vec![tree.nodes().clone()];
    for _ in 0..max_d {
        let prev = levels.last().expect("level 0 exists");
        let next = tree
            .iter()
            .filter(|s| {
                let ext: Vec<&FinSeq> =
                    prev.iter().filter(|t| t.len() > s.len() && is_prefix(s, t)).collect();
                ext.iter()
                    .enumerate()
                    .any(|(i, a)| ext[i + 1..].iter().any(|b| incompatible(a, b)))
            })
            .cloned()
            .collect();
        levels.push(next);
    }
    levels
}

/// Whether some node of `tree` has length `d`, by scanning every node.
pub fn has_depth(tree: &ExplicitTree, d: usize) -> bool {
    tree.iter().any(|s| s.len() == d)
}

/// Largest `d` with `d`-splitting at the root `⟨i⟩` of the interleaving
/// gadget built on `tree`.
///
/// Above a gadget node carrying `σ`, each child `a` of `σ` opens a node whose
/// two children (the binary coordinate) both carry `σ⌢a`. So with `F` the
/// answer at `σ` and `q` the values `F(σ⌢a) + 1` sorted downwards,
/// `F(σ) = max(q_0, q_1 + 1)`, and `F = 0` at leaves. For a non-branching
/// tree this is its height.
pub fn gadget_rank(tree: &ExplicitTree) -> usize {
    fn go(tree: &ExplicitTree, s: &FinSeq) -> usize {
        let mut q: Vec<usize> = tree.children(s).map(|c| go(tree, c) + 1).collect();
        q.sort_unstable_by(|a, b| b.cmp(a));
        match q.as_slice() {
            [] => 0,
            [only] => *only,
            [first, second, ..] => (*first).max(second + 1),
        }
    }
    if tree.is_empty() {
        0
    } else {
        go(tree, &FinSeq::empty())
    }
}
