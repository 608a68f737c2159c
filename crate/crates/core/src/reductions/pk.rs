//! Gadgets between families of trees (parallel well-foundedness) and the
//! perfect kernel of a single tree.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::seqcode::{encode_big, encode_seq_big, incompatible, interleave, FinSeq};
use crate::trees::{ExplicitTree, GeneratedTree};

/// Node of the gadget for member `i`: `⟨i⟩⌢(σ*τ)`.
pub fn gadget_node(i: u64, sigma: &FinSeq, tau: &FinSeq) -> Result<FinSeq> {
    let mut v = vec![i];
    v.extend_from_slice(interleave(sigma, tau)?.entries());
    Ok(FinSeq::new(v))
}

fn binary_words(n: usize) -> impl Iterator<Item = FinSeq> {
    (0u64..1 << n).map(move |w| FinSeq::new((0..n).map(|b| (w >> (n - 1 - b)) & 1).collect()))
}

/// One tree whose kernel answers well-foundedness for every member of the
/// family: `⟨i⟩` for each member, and for each `σ ∈ T_i` and binary `τ` of
/// the same length, `⟨i⟩⌢(σ*τ)` together with its one-shorter prefix.
///
/// A path through `T_i` paired with every binary `τ` gives a perfect subtree
/// above `⟨i⟩`.
pub fn wf_to_pk(family: &[ExplicitTree]) -> ExplicitTree {
    let mut nodes = BTreeSet::new();
    nodes.insert(FinSeq::empty());
    for (i, member) in family.iter().enumerate() {
        nodes.insert(FinSeq::from([i as u64]));
        for sigma in member.iter().filter(|s| !s.is_empty()) {
            for tau in binary_words(sigma.len()) {
                let node = gadget_node(i as u64, sigma, &tau).expect("equal lengths");
                nodes.insert(node.parent().expect("nonempty"));
                nodes.insert(node);
            }
        }
    }
    ExplicitTree::from_closed_set(nodes)
}

/// Membership form of [`wf_to_pk`] for generated families. A node
/// `⟨i⟩⌢x` is a member iff the entries of `x` at even offsets form a member
/// of `T_i` and those at odd offsets are 0 or 1.
pub fn wf_to_pk_generated(family: &[GeneratedTree]) -> GeneratedTree {
    let fam: Arc<Vec<GeneratedTree>> = Arc::new(family.to_vec());
    let bound_fam = fam.clone();
    let depth = 1 + 2 * family.iter().map(GeneratedTree::depth_budget).max().unwrap_or(0);
    let mut g = GeneratedTree::new(
        move |s: &FinSeq| {
            let e = s.entries();
            let Some((&i, x)) = e.split_first() else { return true };
            let Some(member) = fam.get(i as usize) else { return false };
            if x.iter().skip(1).step_by(2).any(|&t| t > 1) {
                return false;
            }
            let sigma: Vec<u64> = x.iter().step_by(2).copied().collect();
            member.contains(&FinSeq::new(sigma))
        },
        depth,
    );
    if family.iter().all(|m| m.branch_bound(0).is_some()) {
        let n = family.len() as u64;
        g = g.with_branch_bound(move |p| match p {
            0 => n.saturating_sub(1),
            p if (p - 1) % 2 == 1 => 1,
            p => bound_fam
                .iter()
                .filter_map(|m| m.branch_bound((p - 1) / 2))
                .max()
                .unwrap_or(0),
        });
    }
    g
}

/// Bit `i` is set (well-founded) iff `⟨i⟩` is outside the kernel.
pub fn wf_from_kernel(family_len: usize, kernel: &BTreeSet<FinSeq>) -> Vec<bool> {
    (0..family_len as u64).map(|i| !kernel.contains(&FinSeq::from([i]))).collect()
}

/// For every node, its unordered pairs of incompatible proper extensions,
/// each pair ordered and the list sorted by sequence code.
#[derive(Debug)]
pub struct PairTable {
    pairs: HashMap<FinSeq, Vec<(FinSeq, FinSeq)>>,
}

impl PairTable {
    pub fn new(tree: &ExplicitTree) -> Self {
        let code: HashMap<&FinSeq, BigUint> = tree.iter().map(|s| (s, encode_seq_big(s))).collect();
        let mut pairs = HashMap::new();
        for tau in tree.iter() {
            let mut ext: Vec<&FinSeq> = tree.extensions(tau).filter(|x| x.len() > tau.len()).collect();
            ext.sort_by(|a, b| code[a].cmp(&code[b]));
            let mut list = Vec::new();
            for (a, x0) in ext.iter().enumerate() {
                for x1 in &ext[a + 1..] {
                    if incompatible(x0, x1) {
                        list.push(((*x0).clone(), (*x1).clone()));
                    }
                }
            }
            pairs.insert(tau.clone(), list);
        }
        PairTable { pairs }
    }

    pub fn pairs(&self, tau: &FinSeq) -> &[(FinSeq, FinSeq)] {
        self.pairs.get(tau).map_or(&[], Vec::as_slice)
    }
}

/// A node of a tuple tree: the root entry `[σ]` followed by tuples of width
/// 2, 4, 8, …
pub type TupleNode = Vec<Vec<FinSeq>>;

/// The tree `T_σ` whose nodes record ever wider systems of incompatible
/// extensions above `σ`. It has a node at depth `d + 1` iff `σ` has
/// `d`-splitting in the source tree.
///
/// Nodes are held structurally; [`TupleTree::node_codes`] gives their integer
/// form.
#[derive(Debug, Clone)]
pub struct TupleTree {
    root: FinSeq,
    table: Arc<PairTable>,
}

impl TupleTree {
    pub fn new(tree: &ExplicitTree, root: FinSeq) -> Self {
        TupleTree { root, table: Arc::new(PairTable::new(tree)) }
    }

    pub fn root(&self) -> &FinSeq {
        &self.root
    }

    /// Children of a node, in canonical order: the last tuple `⟨τ_0, …, τ_m⟩`
    /// is extended by choosing one pair per `τ_i`, odometer-style with `τ_m`
    /// varying fastest.
    pub fn children(&self, node: &TupleNode) -> Vec<TupleNode> {
        let mut out = Vec::new();
        self.for_each_child(node, &mut |c| {
            out.push(c);
            false
        });
        out
    }

    /// Calls `visit` on each child until it returns true. Returns whether
    /// some call returned true.
    fn for_each_child(&self, node: &TupleNode, visit: &mut dyn FnMut(TupleNode) -> bool) -> bool {
        let last = node.last().expect("tuple nodes are nonempty");
        let choices: Vec<&[(FinSeq, FinSeq)]> = last.iter().map(|t| self.table.pairs(t)).collect();
        if choices.iter().any(|c| c.is_empty()) {
            return false;
        }
        let mut idx = vec![0usize; choices.len()];
        loop {
            let mut level = Vec::with_capacity(2 * choices.len());
            for (c, &k) in choices.iter().zip(&idx) {
                level.push(c[k].0.clone());
                level.push(c[k].1.clone());
            }
            let mut child = node.clone();
            child.push(level);
            if visit(child) {
                return true;
            }
            let mut pos = idx.len();
            loop {
                if pos == 0 {
                    return false;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < choices[pos].len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }

    fn root_node(&self) -> TupleNode {
        vec![vec![self.root.clone()]]
    }

    /// Whether some node has exactly `depth` entries. Depth 0 is the empty
    /// sequence and depth 1 the root `⟨σ⟩`.
    pub fn has_node_at_depth(&self, depth: usize) -> bool {
        if depth <= 1 {
            return true;
        }
        fn dfs(t: &TupleTree, node: &TupleNode, remaining: usize) -> bool {
            remaining == 0 || t.for_each_child(node, &mut |c| dfs(t, &c, remaining - 1))
        }
        dfs(self, &self.root_node(), depth - 1)
    }

    /// Depth-`depth` well-foundedness certificate.
    pub fn wf_probe(&self, depth: usize) -> bool {
        !self.has_node_at_depth(depth)
    }

    /// All nodes with exactly `depth` entries, failing past `cap` nodes.
    pub fn nodes_at_depth(&self, depth: usize, cap: usize) -> Result<Vec<TupleNode>> {
        if depth == 0 {
            return Ok(vec![Vec::new()]);
        }
        let mut layer = vec![self.root_node()];
        for _ in 1..depth {
            let mut next = Vec::new();
            for n in &layer {
                let mut over = false;
                self.for_each_child(n, &mut |c| {
                    next.push(c);
                    over = next.len() > cap;
                    over
                });
                if over {
                    return Err(Error::resource(format!("tuple tree layer exceeds {cap} nodes")));
                }
            }
            layer = next;
        }
        Ok(layer)
    }

    /// Greatest depth reached, exploring no further than `limit`.
    pub fn height(&self, limit: usize) -> usize {
        (1..=limit).take_while(|&d| self.has_node_at_depth(d)).last().unwrap_or(0)
    }

    /// Integer form of a node: the code of `σ`, then the code of each tuple
    /// as the sequence of its members' codes.
    pub fn node_codes(node: &TupleNode) -> Vec<BigUint> {
        node.iter()
            .enumerate()
            .map(|(k, level)| {
                if k == 0 {
                    encode_seq_big(&level[0])
                } else {
                    let codes: Vec<BigUint> = level.iter().map(encode_seq_big).collect();
                    encode_big(&codes)
                }
            })
            .collect()
    }
}

/// One tuple tree per node of `tree`, in node order.
pub fn pk_to_wf(tree: &ExplicitTree) -> Vec<TupleTree> {
    let table = Arc::new(PairTable::new(tree));
    tree.iter()
        .map(|s| TupleTree { root: s.clone(), table: table.clone() })
        .collect()
}

/// Well-foundedness answers for the tuple trees of `tree`, probing depth
/// `d + 1` so that the answers line up with `d`-splitting.
pub fn wf_answers(tuple_trees: &[TupleTree], d: usize) -> BTreeMap<FinSeq, bool> {
    tuple_trees.iter().map(|t| (t.root.clone(), t.wf_probe(d + 1))).collect()
}

/// `{σ ∈ T : T_σ judged not well-founded}`.
pub fn kernel_from_wf(tree: &ExplicitTree, wf_bits: &BTreeMap<FinSeq, bool>) -> Result<BTreeSet<FinSeq>> {
    let mut out = BTreeSet::new();
    for s in tree.iter() {
        match wf_bits.get(s) {
            Some(false) => {
                out.insert(s.clone());
            }
            Some(true) => {}
            None => return Err(Error::rejected(format!("no well-foundedness answer for {s}"))),
        }
    }
    Ok(out)
}
