use std::collections::HashMap;

use super::ExplicitTree;
use crate::seqcode::FinSeq;

/// Largest `d` for which each node has `d`-splitting.
///
/// A node has `d`-splitting iff it or one of its descendants has two children
/// with `(d-1)`-splitting, so the rank of a node is the larger of its best
/// child's rank and one more than its second-best child's rank.
pub fn splitting_ranks(tree: &ExplicitTree) -> Vec<(&FinSeq, usize)> {
    ranks_over(tree.iter().rev())
}

pub(super) fn rank_of(tree: &ExplicitTree, seq: &FinSeq) -> usize {
    let sub: Vec<&FinSeq> = tree.extensions(seq).collect();
    ranks_over(sub.into_iter().rev())
        .into_iter()
        .find(|(s, _)| *s == seq)
        .map_or(0, |(_, r)| r)
}

/// `nodes` must be a prefix-closed region listed children-before-parents.
fn ranks_over<'a>(nodes: impl Iterator<Item = &'a FinSeq>) -> Vec<(&'a FinSeq, usize)> {
    // (best, second best) child rank seen so far for each parent.
    let mut acc: HashMap<FinSeq, (Option<usize>, Option<usize>)> = HashMap::new();
    let mut out = Vec::new();
    for node in nodes {
        let rank = match acc.remove(node) {
            Some((Some(best), Some(second))) => best.max(second + 1),
            Some((Some(best), None)) => best,
            _ => 0,
        };
        if let Some(parent) = node.parent() {
            let slot = acc.entry(parent).or_insert((None, None));
            match *slot {
                (None, _) => slot.0 = Some(rank),
                (Some(b), s) if rank > b => *slot = (Some(rank), Some(s.map_or(b, |s| s.max(b)))),
                (Some(_), s) => slot.1 = Some(s.map_or(rank, |s| s.max(rank))),
            }
        }
        out.push((node, rank));
    }
    out.reverse();
    out
}
