use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seqcode::FinSeq;
use crate::trees::{ExplicitTree, GeneratedTree, TreeWithLeaves};

/// Finite prefixes `p_0, p_1, …` of sequences of naturals, all read up to a
/// common `budget`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpoInstance {
    rows: Vec<Vec<u64>>,
    budget: usize,
}

impl LpoInstance {
    pub fn new(rows: Vec<Vec<u64>>, budget: usize) -> Result<Self> {
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() < budget) {
            return Err(Error::rejected(format!(
                "row {i} has length {} below the budget {budget}",
                r.len()
            )));
        }
        Ok(LpoInstance { rows, budget })
    }

    /// Budget = shortest row length.
    pub fn from_rows(rows: Vec<Vec<u64>>) -> Self {
        let budget = rows.iter().map(Vec::len).min().unwrap_or(0);
        LpoInstance { rows, budget }
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// `p_n(j)` for `j < budget`.
    pub fn value(&self, n: usize, j: usize) -> u64 {
        self.rows[n][j]
    }

    /// Index of the first zero of row `n` inside the budget.
    pub fn first_zero(&self, n: usize) -> Option<usize> {
        self.rows[n][..self.budget].iter().position(|&x| x == 0)
    }
}

impl Serialize for LpoInstance {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<&[u64]> = self.rows.iter().map(|r| &r[..self.budget]).collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LpoInstance {
    /// Accepts a bare array of rows, or `{"rows": [...]}` with an optional
    /// `"budget"`.
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Rows(Vec<Vec<u64>>),
            Object { rows: Vec<Vec<u64>>, budget: Option<usize> },
        }
        match Repr::deserialize(d)? {
            Repr::Rows(rows) => Ok(LpoInstance::from_rows(rows)),
            Repr::Object { rows, budget: None } => Ok(LpoInstance::from_rows(rows)),
            Repr::Object { rows, budget: Some(b) } => {
                LpoInstance::new(rows, b).map_err(serde::de::Error::custom)
            }
        }
    }
}

/// Answer bits. `bits[i]` certifies a zero in row `i` before `budget`; a false
/// bit only says no zero was seen inside the window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LpoAnswer {
    pub bits: Vec<bool>,
    pub budget: usize,
}

impl LpoAnswer {
    pub fn ones(&self) -> BTreeSet<usize> {
        self.bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect()
    }
}

impl fmt::Display for LpoAnswer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, b) in self.bits.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(if *b { "1" } else { "0" })?;
        }
        write!(f, ") at budget {}", self.budget)
    }
}

/// Definitional solver: bit `i` is set iff row `i` has a zero before the budget.
pub fn solve_lpo(inst: &LpoInstance) -> LpoAnswer {
    LpoAnswer {
        bits: (0..inst.len()).map(|n| inst.first_zero(n).is_some()).collect(),
        budget: inst.budget(),
    }
}

/// `n + 1` ones followed by a zero.
pub fn lpo_marker(n: usize) -> FinSeq {
    let mut v = vec![1; n + 1];
    v.push(0);
    FinSeq::new(v)
}

/// Tree of all-ones sequences, the markers `1^(n+1)⌢0` for each row `n`, and
/// `1^(n+1)⌢0⌢j` when `j` is the first zero of row `n`.
///
/// The depth budget `rows + 2` covers every marker and its child.
pub fn lpo_to_tree(inst: &LpoInstance) -> GeneratedTree {
    let first_zero: Vec<Option<usize>> = (0..inst.len()).map(|n| inst.first_zero(n)).collect();
    let rows = inst.len();
    let bound = (inst.budget().saturating_sub(1) as u64).max(1);
    GeneratedTree::new(
        move |s: &FinSeq| {
            let e = s.entries();
            let ones = e.iter().take_while(|&&x| x == 1).count();
            let rest = &e[ones..];
            match rest {
                [] => true,
                [0] => ones >= 1 && ones - 1 < rows,
                [0, j] => ones >= 1 && ones - 1 < rows && first_zero[ones - 1] == Some(*j as usize),
                _ => false,
            }
        },
        rows + 2,
    )
    .with_branch_bound(move |_| bound)
}

/// The window of [`lpo_to_tree`] used to read answers back.
pub fn lpo_window(inst: &LpoInstance) -> Result<TreeWithLeaves> {
    lpo_to_tree(inst).truncate(inst.len() + 2)
}

/// `bits[n]` is set iff the marker for row `n` is not a leaf.
pub fn lpo_from_leafset(inst: &LpoInstance, leaves: &BTreeSet<FinSeq>) -> LpoAnswer {
    LpoAnswer {
        bits: (0..inst.len()).map(|n| !leaves.contains(&lpo_marker(n))).collect(),
        budget: inst.budget(),
    }
}

/// Rows `p_i(j) = 0` iff `σ_i⌢j ∈ T`, with `σ_i` the nodes of `T` in
/// lexicographic order and `j` below a budget exceeding every entry plus one.
pub fn tree_to_lpo(tree: &ExplicitTree) -> (LpoInstance, Vec<FinSeq>) {
    let max_entry = tree.iter().flat_map(|s| s.entries().iter().copied()).max();
    let budget = max_entry.map_or(1, |m| m as usize + 2);
    let order: Vec<FinSeq> = tree.iter().cloned().collect();
    let rows = order
        .iter()
        .map(|s| (0..budget as u64).map(|j| u64::from(!tree.contains(&s.child(j)))).collect())
        .collect();
    (LpoInstance { rows, budget }, order)
}

/// `{σ_i : bits[i] unset}`.
pub fn leaves_from_lpo(order: &[FinSeq], answer: &LpoAnswer) -> BTreeSet<FinSeq> {
    order
        .iter()
        .zip(&answer.bits)
        .filter(|(_, &b)| !b)
        .map(|(s, _)| s.clone())
        .collect()
}

/// Rows `p_i(n) = 0` iff `f(n) = i`, for `i < rows`. The answer's set bits
/// are the range of `f` below `rows`.
pub fn injection_to_lpo(f: &[u64], rows: usize) -> Result<LpoInstance> {
    let mut seen = HashSet::new();
    for (n, &v) in f.iter().enumerate() {
        if !seen.insert(v) {
            return Err(Error::rejected(format!("not injective: value {v} repeats at index {n}")));
        }
    }
    let rows = (0..rows as u64)
        .map(|i| f.iter().map(|&v| u64::from(v != i)).collect())
        .collect();
    Ok(LpoInstance { rows, budget: f.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::leaf_brute;

    fn s<const N: usize>(v: [u64; N]) -> FinSeq {
        FinSeq::from(v)
    }

    #[test]
    fn lpo_tree_first_zero_child() {
        let inst = LpoInstance::from_rows(vec![vec![1, 0, 1]]);
        let w = lpo_window(&inst).unwrap();
        assert!(w.tree.contains(&s([1, 0])));
        assert!(w.tree.contains(&s([1, 0, 1])));
        assert_eq!(w.tree.children(&s([1, 0])).count(), 1);
        assert_eq!(lpo_from_leafset(&inst, &w.leaves).bits, vec![true]);
    }

    #[test]
    fn lpo_tree_without_zero() {
        let inst = LpoInstance::from_rows(vec![vec![1, 1, 1]]);
        let w = lpo_window(&inst).unwrap();
        assert!(w.leaves.contains(&s([1, 0])));
        assert_eq!(lpo_from_leafset(&inst, &w.leaves).bits, vec![false]);
    }

    #[test]
    fn empty_instance_is_a_spine() {
        let inst = LpoInstance::from_rows(vec![]);
        let w = lpo_to_tree(&inst).with_depth_budget(4).truncate(4).unwrap();
        assert_eq!(w.tree.len(), 5);
        assert!(w.tree.iter().all(|n| n.entries().iter().all(|&x| x == 1)));
        assert_eq!(w.frontier, [s([1, 1, 1, 1])].into());
        assert!(lpo_from_leafset(&inst, &w.leaves).bits.is_empty());
    }

    #[test]
    fn only_first_zero_counts() {
        let inst = LpoInstance::from_rows(vec![vec![3, 0, 0, 2], vec![0, 5, 0, 0]]);
        let w = lpo_window(&inst).unwrap();
        assert!(w.tree.contains(&s([1, 0, 1])));
        assert!(!w.tree.contains(&s([1, 0, 2])));
        assert!(w.tree.contains(&s([1, 1, 0, 0])));
        assert_eq!(lpo_from_leafset(&inst, &w.leaves), solve_lpo(&inst));
    }

    #[test]
    fn tree_to_lpo_examples() {
        let t = ExplicitTree::from_nodes([FinSeq::empty(), s([0])]).unwrap();
        let (inst, order) = tree_to_lpo(&t);
        assert_eq!(order, vec![FinSeq::empty(), s([0])]);
        assert_eq!(inst.value(0, 0), 0);
        assert!(inst.rows()[1].iter().all(|&x| x == 1));
        assert_eq!(leaves_from_lpo(&order, &solve_lpo(&inst)), leaf_brute(&t));

        let root = ExplicitTree::from_nodes([FinSeq::empty()]).unwrap();
        let (inst, order) = tree_to_lpo(&root);
        assert_eq!(leaves_from_lpo(&order, &solve_lpo(&inst)), [FinSeq::empty()].into());

        let (inst, order) = tree_to_lpo(&ExplicitTree::empty());
        assert!(inst.is_empty() && order.is_empty());
    }

    #[test]
    fn injection_examples() {
        let inst = injection_to_lpo(&[3, 0], 4).unwrap();
        assert_eq!(solve_lpo(&inst).bits, vec![true, false, false, true]);
        let inst = injection_to_lpo(&[], 2).unwrap();
        assert_eq!(solve_lpo(&inst).bits, vec![false, false]);
        assert!(matches!(injection_to_lpo(&[1, 1], 3), Err(Error::Rejected(_))));
    }

    #[test]
    fn instance_json() {
        let inst: LpoInstance = serde_json::from_str("[[1,0,1],[1,1]]").unwrap();
        assert_eq!(inst.budget(), 2);
        assert_eq!(serde_json::to_string(&inst).unwrap(), "[[1,0],[1,1]]");
        let inst: LpoInstance = serde_json::from_str(r#"{"rows":[[1,0,1]],"budget":3}"#).unwrap();
        assert_eq!(inst.budget(), 3);
        assert!(serde_json::from_str::<LpoInstance>(r#"{"rows":[[1]],"budget":3}"#).is_err());
        assert_eq!(solve_lpo(&inst).to_string(), "(1) at budget 3");
    }
}
