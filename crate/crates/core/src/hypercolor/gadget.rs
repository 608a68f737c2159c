use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hypercolor::{Coloring, Hypergraph};
use crate::seqcode::{decode, encode, FinSeq, SeqCode};
use crate::trees::{GeneratedTree, TreeWithLeaves};

/// Code of the empty vertex set.
pub const EMPTY_SET_CODE: u64 = 0;

/// Code of the vertex pair `{a, b}`: the sequence code of `⟨min, max⟩`.
pub fn pair_code(a: usize, b: usize) -> u64 {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    encode(&FinSeq::new(vec![lo as u64, hi as u64]))
        .expect("vertex pair codes fit in 64 bits")
        .0
}

/// Inverse of [`pair_code`] on codes of increasing pairs.
pub fn decode_pair(code: u64) -> Option<(usize, usize)> {
    match decode(SeqCode(code)).entries() {
        &[a, b] if a < b => Some((a as usize, b as usize)),
        _ => None,
    }
}

/// Depth `2t` with `t = max(vertex_count, edge_count) + 1`. A node of this
/// length decides a pair for every edge and a color for every vertex.
pub fn calibrated_depth(h: &Hypergraph) -> usize {
    2 * (h.vertex_count().max(h.edge_count()) + 1)
}

struct ColoringTreeSpec {
    edges: Vec<Vec<usize>>,
    pairs: Vec<Vec<u64>>,
    k: u64,
}

impl ColoringTreeSpec {
    fn edge(&self, j: usize) -> &[usize] {
        self.edges.get(j).map_or(&[], Vec::as_slice)
    }

    fn contains(&self, s: &FinSeq) -> bool {
        let e = s.entries();
        let Some(m) = e.len().checked_sub(1) else { return true };
        let colored = |v: usize| 2 * v < m;
        for (i, &x) in e.iter().enumerate() {
            if i % 2 == 1 {
                if x >= self.k {
                    return false;
                }
                continue;
            }
            let edge = self.edge(i / 2);
            if x == EMPTY_SET_CODE {
                if edge.iter().filter(|&&v| v <= m).count() >= 2 {
                    return false;
                }
                continue;
            }
            let Some((a, b)) = decode_pair(x) else { return false };
            if edge.binary_search(&a).is_err() || edge.binary_search(&b).is_err() {
                return false;
            }
            if colored(a) && colored(b) && e[2 * a + 1] == e[2 * b + 1] {
                return false;
            }
        }
        true
    }

    fn candidates(&self, s: &FinSeq) -> Vec<u64> {
        let i = s.len();
        if i % 2 == 1 {
            (0..self.k).collect()
        } else {
            let mut c = self.pairs.get(i / 2).cloned().unwrap_or_default();
            c.push(EMPTY_SET_CODE);
            c
        }
    }
}

/// Tree of sequences `⟨σ_0, σ_1, …⟩` where `σ_2j` names a pair of vertices
/// from edge `j` (or the empty set while that edge has no two vertices among
/// `v_0..v_m`), `σ_2j+1 < k` colors vertex `j`, and each named pair gets two
/// colors once both are colored. Edges past the list are empty, vertices past
/// the count are unconstrained.
///
/// The tree has a node at [`calibrated_depth`] iff the hypergraph has a
/// proper `k`-coloring.
pub fn hpc_to_wf_tree(h: &Hypergraph, k: u32) -> Result<GeneratedTree> {
    if k < 2 {
        return Err(Error::rejected(format!("palette size must be at least 2, got {k}")));
    }
    let pairs: Vec<Vec<u64>> = h
        .edges()
        .iter()
        .map(|e| {
            let mut p = Vec::new();
            for (x, &a) in e.iter().enumerate() {
                for &b in &e[x + 1..] {
                    p.push(pair_code(a, b));
                }
            }
            p
        })
        .collect();
    let max_pair = pairs.iter().flatten().copied().max().unwrap_or(EMPTY_SET_CODE);
    let spec = Arc::new(ColoringTreeSpec { edges: h.edges().to_vec(), pairs, k: k as u64 });
    let (m, c) = (spec.clone(), spec);
    let k = k as u64;
    Ok(GeneratedTree::new(move |s| m.contains(s), calibrated_depth(h))
        .with_branch_bound(move |i| if i % 2 == 1 { k - 1 } else { max_pair })
        .with_candidates(move |s| c.candidates(s)))
}

/// Colors of `v_0, …, v_(t-1)` read from the odd entries of a node of even
/// length `2t`.
pub fn decode_coloring(node: &FinSeq, k: u32) -> Result<Coloring> {
    if !node.len().is_multiple_of(2) {
        return Err(Error::rejected(format!("node {node} has odd length")));
    }
    let colors = node
        .entries()
        .iter()
        .skip(1)
        .step_by(2)
        .map(|&c| {
            if c < k as u64 {
                Ok(c as u32)
            } else {
                Err(Error::rejected(format!("entry {c} in {node} is not a color below {k}")))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Coloring { colors, k })
}

/// Names of the five fixed anchor vertices, in vertex order.
pub const ANCHORS: [&str; 5] = ["a0", "a1", "b0", "b1", "s"];

/// Hypergraph that is `k`-colorable iff the tree has a path reaching its
/// frontier.
///
/// Vertices: anchors `a0 a1 b0 b1 s`, then `k - 2` clique vertices `c0..`,
/// then `σ_0, σ_1` for each node `σ` in order. Edges: `a0a1 a1s b0b1 b1s`;
/// `σ_0σ_1` for nonempty `σ`; `σ_1 s` for leaves; `{σ_1} ∪ {τ_0 : τ child of
/// σ}` for non-leaves; `{a0, b0} ∪ {σ_0 : |σ| = 1}`. For `k > 2` the clique
/// vertices are pairwise joined and joined to every other vertex.
///
/// Frontier nodes count as non-leaves, so their edge `{σ_1}` is a singleton
/// and constrains nothing. Likewise a frontier root turns `E_0` into the
/// singleton `{a0}`, since the depth-1 nodes it would list lie outside the
/// window.
pub fn wf_to_hpc(tl: &TreeWithLeaves, k: u32) -> Result<Hypergraph> {
    if k < 2 {
        return Err(Error::rejected(format!("palette size must be at least 2, got {k}")));
    }
    let cliques = (k - 2) as usize;
    let base = ANCHORS.len() + cliques;
    let index: BTreeMap<&FinSeq, usize> = tl.tree.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let v0 = |s: &FinSeq| base + 2 * index[s];
    let v1 = |s: &FinSeq| base + 2 * index[s] + 1;
    let (a0, a1, b0, b1, s) = (0, 1, 2, 3, 4);

    let mut h = Hypergraph::new(base + 2 * tl.tree.len(), vec![])?;
    for (i, name) in ANCHORS.iter().enumerate() {
        h.name_vertex(*name, i)?;
    }
    for c in 0..cliques {
        h.name_vertex(format!("c{c}"), ANCHORS.len() + c)?;
    }
    for e in [[a0, a1], [a1, s], [b0, b1], [b1, s]] {
        h.add_edge(e.to_vec())?;
    }
    for node in tl.tree.iter() {
        if !node.is_empty() {
            h.add_edge(vec![v0(node), v1(node)])?;
        }
        if tl.leaves.contains(node) {
            h.add_edge(vec![v1(node), s])?;
        } else {
            let mut e = vec![v1(node)];
            e.extend(tl.tree.children(node).map(&v0));
            h.add_edge(e)?;
        }
    }
    if tl.frontier.contains(&FinSeq::empty()) {
        h.add_edge(vec![a0])?;
    } else {
        let mut e0 = vec![a0, b0];
        e0.extend(tl.tree.iter().filter(|n| n.len() == 1).map(v0));
        h.add_edge(e0)?;
    }

    let clique: Vec<usize> = (ANCHORS.len()..base).collect();
    for (x, &c) in clique.iter().enumerate() {
        for &d in &clique[x + 1..] {
            h.add_edge(vec![c, d])?;
        }
    }
    for &c in &clique {
        for v in (0..h.vertex_count()).filter(|v| !clique.contains(v)) {
            h.add_edge(vec![c, v])?;
        }
    }
    Ok(h)
}
