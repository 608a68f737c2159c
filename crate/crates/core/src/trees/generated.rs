use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use super::{ExplicitTree, TreeQuery, TreeWithLeaves};
use crate::error::{Error, Result};
use crate::seqcode::FinSeq;

/// Node cap applied by [`GeneratedTree::truncate`].
pub const DEFAULT_NODE_CAP: usize = 1 << 20;

type Membership = Arc<dyn Fn(&FinSeq) -> bool + Send + Sync>;
type BranchBound = Arc<dyn Fn(usize) -> u64 + Send + Sync>;
type Candidates = Arc<dyn Fn(&FinSeq) -> Vec<u64> + Send + Sync>;

/// A tree given by a decidable, prefix-closed membership predicate, explored
/// up to `depth_budget`.
///
/// Children are found either by scanning `0..=branch_bound(|σ|)` or, when a
/// candidate enumerator is attached, by filtering its proposals through the
/// membership test. Without either, children cannot be enumerated.
#[derive(Clone)]
pub struct GeneratedTree {
    membership: Membership,
    branch_bound: Option<BranchBound>,
    candidates: Option<Candidates>,
    depth_budget: usize,
}

impl GeneratedTree {
    pub fn new(membership: impl Fn(&FinSeq) -> bool + Send + Sync + 'static, depth_budget: usize) -> Self {
        GeneratedTree {
            membership: Arc::new(membership),
            branch_bound: None,
            candidates: None,
            depth_budget,
        }
    }

    pub fn with_branch_bound(mut self, bound: impl Fn(usize) -> u64 + Send + Sync + 'static) -> Self {
        self.branch_bound = Some(Arc::new(bound));
        self
    }

    /// Attaches a child-entry enumerator. Its proposals must include every
    /// `j` with `σ⌢j` a member; non-members are filtered out. Candidates are
    /// explored in the order given.
    pub fn with_candidates(mut self, cands: impl Fn(&FinSeq) -> Vec<u64> + Send + Sync + 'static) -> Self {
        self.candidates = Some(Arc::new(cands));
        self
    }

    pub fn with_depth_budget(mut self, depth_budget: usize) -> Self {
        self.depth_budget = depth_budget;
        self
    }

    /// Drops the candidate enumerator so children are found by scanning the
    /// branch bound.
    pub fn scanning_only(mut self) -> Self {
        self.candidates = None;
        self
    }

    pub fn depth_budget(&self) -> usize {
        self.depth_budget
    }

    pub fn branch_bound(&self, i: usize) -> Option<u64> {
        self.branch_bound.as_ref().map(|b| b(i))
    }

    pub fn is_enumerable(&self) -> bool {
        self.branch_bound.is_some() || self.candidates.is_some()
    }

    pub fn contains(&self, seq: &FinSeq) -> bool {
        (self.membership)(seq)
    }

    /// Entries `j` with `seq⌢j` a member, in exploration order.
    pub fn child_entries(&self, seq: &FinSeq) -> Result<Vec<u64>> {
        let proposals: Vec<u64> = if let Some(c) = &self.candidates {
            c(seq)
        } else if let Some(b) = &self.branch_bound {
            (0..=b(seq.len())).collect()
        } else {
            return Err(Error::rejected(
                "generated tree has neither a branch bound nor a candidate enumerator",
            ));
        };
        Ok(proposals.into_iter().filter(|&j| self.contains(&seq.child(j))).collect())
    }

    pub fn children(&self, seq: &FinSeq) -> Result<Vec<FinSeq>> {
        Ok(self.child_entries(seq)?.into_iter().map(|j| seq.child(j)).collect())
    }

    fn check_depth(&self, d: usize) -> Result<()> {
        if d > self.depth_budget {
            Err(Error::rejected(format!(
                "depth {d} exceeds the depth budget {}",
                self.depth_budget
            )))
        } else {
            Ok(())
        }
    }

    /// Explicit window of all members of length at most `d`.
    ///
    /// Nodes shorter than `d` with no children are leaves. Nodes of length
    /// exactly `d` are probed one level further: those with no children are
    /// leaves, the rest form the frontier.
    pub fn truncate(&self, d: usize) -> Result<TreeWithLeaves> {
        self.truncate_capped(d, DEFAULT_NODE_CAP)
    }

    pub fn truncate_capped(&self, d: usize, node_cap: usize) -> Result<TreeWithLeaves> {
        self.check_depth(d)?;
        if !self.is_enumerable() {
            return Err(Error::rejected(
                "cannot truncate a generated tree without a branch bound",
            ));
        }
        let mut nodes = BTreeSet::new();
        let mut leaves = BTreeSet::new();
        let mut frontier = BTreeSet::new();
        if !self.contains(&FinSeq::empty()) {
            return Ok(TreeWithLeaves::default());
        }
        let mut stack = vec![FinSeq::empty()];
        while let Some(node) = stack.pop() {
            let kids = self.children(&node)?;
            if kids.is_empty() {
                leaves.insert(node.clone());
            } else if node.len() == d {
                frontier.insert(node.clone());
            } else {
                stack.extend(kids);
            }
            nodes.insert(node);
            if nodes.len() > node_cap {
                return Err(Error::resource(format!(
                    "window of depth {d} exceeds {node_cap} nodes"
                )));
            }
        }
        Ok(TreeWithLeaves {
            tree: ExplicitTree::from_closed_set(nodes),
            leaves,
            frontier,
        })
    }

    /// The explicit window at the full depth budget.
    pub fn window(&self) -> Result<ExplicitTree> {
        Ok(self.truncate(self.depth_budget)?.tree)
    }

    /// First member of length `d` in depth-first exploration order.
    pub fn find_node_at_depth(&self, d: usize) -> Result<Option<FinSeq>> {
        self.check_depth(d)?;
        if !self.contains(&FinSeq::empty()) {
            return Ok(None);
        }
        let mut stack = vec![FinSeq::empty()];
        while let Some(node) = stack.pop() {
            if node.len() == d {
                return Ok(Some(node));
            }
            let mut kids = self.children(&node)?;
            kids.reverse();
            stack.extend(kids);
        }
        Ok(None)
    }
}

impl fmt::Debug for GeneratedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GeneratedTree")
            .field("depth_budget", &self.depth_budget)
            .field("bounded", &self.branch_bound.is_some())
            .field("candidates", &self.candidates.is_some())
            .finish()
    }
}

impl TreeQuery for GeneratedTree {
    fn nodes_at_depth(&self, d: usize) -> Result<BTreeSet<FinSeq>> {
        self.check_depth(d)?;
        let window = self.truncate(d)?;
        window.tree.nodes_at_depth(d)
    }

    fn wf_probe(&self, d: usize) -> Result<bool> {
        Ok(self.find_node_at_depth(d)?.is_none())
    }

    /// Witnesses are searched inside the depth-budget window.
    fn has_d_splitting(&self, seq: &FinSeq, d: usize) -> Result<bool> {
        self.window()?.has_d_splitting(seq, d)
    }

    fn kernel_probe(&self, d: usize) -> Result<BTreeSet<FinSeq>> {
        self.window()?.kernel_probe(d)
    }
}
