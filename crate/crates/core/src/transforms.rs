//! Pointwise shifts of whole trees and the star transform, which attaches a
//! 0-labelled leaf under every node of the shifted tree so that its leaf set
//! can be read off syntactically.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::seqcode::{shift_down, shift_up, FinSeq};
use crate::trees::{ExplicitTree, GeneratedTree};

/// `{σ ∸ 1 : σ ∈ T}`. Not injective: `⟨0⟩` and `⟨1⟩` collide.
pub fn t_minus(tree: &ExplicitTree) -> ExplicitTree {
    ExplicitTree::from_closed_set(tree.iter().map(shift_down).collect())
}

/// `{σ + 1 : σ ∈ T}`.
pub fn t_plus(tree: &ExplicitTree) -> ExplicitTree {
    ExplicitTree::from_closed_set(tree.iter().map(shift_up).collect())
}

/// The star transform of a tree, remembering its origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarTree {
    pub star: ExplicitTree,
    pub origin: ExplicitTree,
}

/// `T⁺ ∪ {σ⌢0 : σ ∈ T⁺}`.
pub fn t_star(tree: &ExplicitTree) -> StarTree {
    let mut nodes = BTreeSet::new();
    for node in tree.iter() {
        let up = shift_up(node);
        nodes.insert(up.child(0));
        nodes.insert(up);
    }
    StarTree {
        star: ExplicitTree::from_closed_set(nodes),
        origin: tree.clone(),
    }
}

fn ends_in_zero(seq: &FinSeq) -> bool {
    seq.last() == Some(0)
}

/// Nonempty nodes of the star tree ending in 0. No leaf search is needed.
pub fn star_leaves(star: &StarTree) -> BTreeSet<FinSeq> {
    star_leaves_of(&star.star)
}

fn star_leaves_of(star: &ExplicitTree) -> BTreeSet<FinSeq> {
    star.iter().filter(|s| ends_in_zero(s)).cloned().collect()
}

/// Recovers `T` from a tree of star shape: `{σ ∸ 1 : σ ∈ S, σ empty or last
/// entry nonzero}`.
///
/// Rejects trees where a node ending in 0 has children, where a 0 appears
/// before the last position, or where a shifted node lacks its 0-child.
pub fn star_invert(star: &ExplicitTree) -> Result<ExplicitTree> {
    let mut out = BTreeSet::new();
    for node in star.iter() {
        let n = node.len();
        if node.entries().iter().take(n.saturating_sub(1)).any(|&x| x == 0) {
            return Err(Error::rejected(format!("{node} has a 0 before its last entry")));
        }
        if ends_in_zero(node) {
            if star.has_children(node) {
                return Err(Error::rejected(format!("{node} ends in 0 but has children")));
            }
            continue;
        }
        if !star.contains(&node.child(0)) {
            return Err(Error::rejected(format!("{node} is missing its 0-child")));
        }
        out.insert(shift_down(node));
    }
    Ok(ExplicitTree::from_closed_set(out))
}

/// Elementwise star transform with its leaf set, preserving order.
pub fn star_sequence(trees: &[ExplicitTree]) -> Vec<(StarTree, BTreeSet<FinSeq>)> {
    trees
        .iter()
        .map(|t| {
            let s = t_star(t);
            let leaves = star_leaves(&s);
            (s, leaves)
        })
        .collect()
}

/// `K ↦ K⁺`.
pub fn map_kernel_up(kernel: &BTreeSet<FinSeq>) -> BTreeSet<FinSeq> {
    kernel.iter().map(shift_up).collect()
}

/// `K⁺ ↦ K`.
pub fn map_kernel_down(kernel: &BTreeSet<FinSeq>) -> BTreeSet<FinSeq> {
    kernel.iter().map(shift_down).collect()
}

/// The star tree with its leaves removed. Equals `t_plus(origin)`.
pub fn leaf_deleted(star: &StarTree) -> ExplicitTree {
    ExplicitTree::from_closed_set(star.star.iter().filter(|s| !ends_in_zero(s)).cloned().collect())
}

impl GeneratedTree {
    /// Membership-level `T⁺`.
    pub fn shifted_up(&self) -> GeneratedTree {
        let inner = self.clone();
        let bound_src = self.clone();
        let mut g = GeneratedTree::new(
            move |s: &FinSeq| s.entries().iter().all(|&x| x > 0) && inner.contains(&shift_down(s)),
            self.depth_budget(),
        );
        if bound_src.branch_bound(0).is_some() {
            g = g.with_branch_bound(move |i| bound_src.branch_bound(i).unwrap_or(0) + 1);
        }
        g
    }

    /// Membership-level `T⁻`: `σ` is a member iff some member of the original
    /// tree shifts down to it. Each 0 entry has two preimages, so the check
    /// examines `2^(number of zeros)` candidates.
    pub fn shifted_down(&self) -> GeneratedTree {
        let inner = self.clone();
        let bound_src = self.clone();
        let mut g = GeneratedTree::new(
            move |s: &FinSeq| {
                let zeros: Vec<usize> =
                    (0..s.len()).filter(|&i| s.entries()[i] == 0).collect();
                let base: Vec<u64> = s.entries().iter().map(|&x| x + 1).collect();
                (0u64..1 << zeros.len()).any(|mask| {
                    let mut pre = base.clone();
                    for (bit, &i) in zeros.iter().enumerate() {
                        if mask >> bit & 1 == 1 {
                            pre[i] = 0;
                        }
                    }
                    inner.contains(&FinSeq::new(pre))
                })
            },
            self.depth_budget(),
        );
        if bound_src.branch_bound(0).is_some() {
            g = g.with_branch_bound(move |i| bound_src.branch_bound(i).unwrap_or(0).saturating_sub(1));
        }
        g
    }

    /// Membership-level `T*`. Its depth budget grows by one to hold the
    /// attached leaves.
    pub fn starred(&self) -> GeneratedTree {
        let plus = self.shifted_up();
        let bound_src = plus.clone();
        let mut g = GeneratedTree::new(
            move |s: &FinSeq| match s.last() {
                Some(0) => s.parent().is_some_and(|p| plus.contains(&p)),
                _ => plus.contains(s),
            },
            self.depth_budget() + 1,
        );
        if bound_src.branch_bound(0).is_some() {
            g = g.with_branch_bound(move |i| bound_src.branch_bound(i).unwrap_or(0));
        }
        g
    }
}

/// Whether a node of a starred generated tree is one of its attached leaves.
pub fn is_star_leaf(seq: &FinSeq) -> bool {
    ends_in_zero(seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::leaf_brute;

    fn tree(nodes: &[&[u64]]) -> ExplicitTree {
        ExplicitTree::from_nodes(nodes.iter().map(|n| FinSeq::new(n.to_vec()))).unwrap()
    }

    #[test]
    fn minus_examples() {
        assert_eq!(t_minus(&tree(&[&[], &[2]])), tree(&[&[], &[1]]));
        assert_eq!(t_minus(&tree(&[&[], &[0], &[1]])), tree(&[&[], &[0]]));
        assert!(t_minus(&ExplicitTree::empty()).is_empty());
    }

    #[test]
    fn plus_examples() {
        assert_eq!(t_plus(&tree(&[&[], &[0]])), tree(&[&[], &[1]]));
        assert!(t_plus(&ExplicitTree::empty()).is_empty());
    }

    #[test]
    fn star_examples() {
        let s = t_star(&tree(&[&[], &[0]]));
        assert_eq!(s.star, tree(&[&[], &[0], &[1], &[1, 0]]));
        assert_eq!(star_leaves(&s), [FinSeq::from([0]), FinSeq::from([1, 0])].into());
        assert_eq!(star_leaves(&s), leaf_brute(&s.star));

        let s = t_star(&tree(&[&[]]));
        assert_eq!(s.star, tree(&[&[], &[0]]));
        assert_eq!(star_leaves(&s), [FinSeq::from([0])].into());
        assert_eq!(star_leaves(&s), leaf_brute(&s.star));

        let s = t_star(&ExplicitTree::empty());
        assert!(s.star.is_empty() && star_leaves(&s).is_empty());
    }

    #[test]
    fn star_invert_examples() {
        let back = star_invert(&tree(&[&[], &[0], &[1], &[1, 0]])).unwrap();
        assert_eq!(back, tree(&[&[], &[0]]));
        assert!(matches!(star_invert(&tree(&[&[], &[0], &[0, 0]])), Err(Error::Rejected(_))));
        // ⟨1⟩ without ⟨1,0⟩
        assert!(star_invert(&tree(&[&[], &[0], &[1]])).is_err());
        assert!(star_invert(&ExplicitTree::empty()).unwrap().is_empty());
    }

    #[test]
    fn star_sequence_examples() {
        assert!(star_sequence(&[]).is_empty());
        let out = star_sequence(&[ExplicitTree::empty(), tree(&[&[]])]);
        assert_eq!(out.len(), 2);
        assert!(out[0].0.star.is_empty() && out[0].1.is_empty());
        assert_eq!(out[1].0.star, tree(&[&[], &[0]]));
        assert_eq!(out[1].1, [FinSeq::from([0])].into());
    }

    #[test]
    fn kernel_map_examples() {
        let k: BTreeSet<FinSeq> = [FinSeq::empty(), FinSeq::from([0])].into();
        assert_eq!(map_kernel_up(&k), [FinSeq::empty(), FinSeq::from([1])].into());
        assert!(map_kernel_up(&BTreeSet::new()).is_empty());
        assert_eq!(map_kernel_down(&map_kernel_up(&k)), k);
    }

    #[test]
    fn generated_transforms_match_explicit() {
        let g = GeneratedTree::new(|s| s.entries().iter().all(|&x| x <= 2) && s.len() <= 3, 4)
            .with_branch_bound(|_| 2);
        let t = g.window().unwrap();
        assert_eq!(g.shifted_up().window().unwrap(), t_plus(&t));
        assert_eq!(g.shifted_down().window().unwrap(), t_minus(&t));
        let star = g.starred().window().unwrap();
        assert_eq!(star, t_star(&t).star);
        assert!(star.leaves().iter().all(is_star_leaf));
    }
}
