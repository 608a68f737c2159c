use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::reductions::LpoInstance;
use crate::seqcode::FinSeq;
use crate::trees::{ExplicitTree, GeneratedTree, TreeWithLeaves, DEFAULT_NODE_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorName {
    Full,
    Path,
    Comb,
    FiniteRandom,
    Lpo,
}

impl FromStr for GeneratorName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "full" => GeneratorName::Full,
            "path" => GeneratorName::Path,
            "comb" => GeneratorName::Comb,
            "finite-random" => GeneratorName::FiniteRandom,
            "lpo" => GeneratorName::Lpo,
            other => return Err(Error::rejected(format!("unknown generator {other:?}"))),
        })
    }
}

impl fmt::Display for GeneratorName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GeneratorName::Full => "full",
            GeneratorName::Path => "path",
            GeneratorName::Comb => "comb",
            GeneratorName::FiniteRandom => "finite-random",
            GeneratorName::Lpo => "lpo",
        })
    }
}

/// Parameters for [`generate`]. `k` is the branching (entries `0..k`), `d`
/// the depth (or row length for `lpo`), `nodes` the target node count for
/// `finite-random` (or row count for `lpo`), and `budget` the node cap.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub name: GeneratorName,
    pub k: u64,
    pub d: usize,
    pub seed: u64,
    pub nodes: usize,
    pub budget: usize,
}

impl GeneratorSpec {
    pub fn new(name: GeneratorName) -> Self {
        GeneratorSpec { name, k: 2, d: 3, seed: 0, nodes: 16, budget: DEFAULT_NODE_CAP }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generated {
    Tree(TreeWithLeaves),
    Lpo(LpoInstance),
}

/// The infinite complete `k`-branching tree.
pub fn full_generator(k: u64, depth_budget: usize) -> GeneratedTree {
    GeneratedTree::new(move |s| s.entries().iter().all(|&x| x < k), depth_budget)
        .with_branch_bound(move |_| k.saturating_sub(1))
        .with_candidates(move |_| (0..k).collect())
}

/// The infinite path `0, 00, 000, …`.
pub fn path_generator(depth_budget: usize) -> GeneratedTree {
    GeneratedTree::new(|s| s.entries().iter().all(|&x| x == 0), depth_budget)
        .with_branch_bound(|_| 0)
        .with_candidates(|_| vec![0])
}

/// The infinite path with a leaf `0ⁿ⌢1` hanging off every spine node.
pub fn comb_generator(depth_budget: usize) -> GeneratedTree {
    GeneratedTree::new(
        |s| {
            let e = s.entries();
            match e.split_last() {
                None => true,
                Some((&last, spine)) => last <= 1 && spine.iter().all(|&x| x == 0),
            }
        },
        depth_budget,
    )
    .with_branch_bound(|_| 1)
    .with_candidates(|s| if s.last().unwrap_or(0) == 0 { vec![0, 1] } else { vec![] })
}

/// Random prefix-closed set with about `nodes` nodes, height at most `depth`
/// and entries below `k`. Stops early when no room is left.
pub fn finite_random(rng: &mut impl Rng, nodes: usize, depth: usize, k: u64) -> ExplicitTree {
    if nodes == 0 {
        return ExplicitTree::empty();
    }
    let k = k.max(1);
    let mut set = BTreeSet::from([FinSeq::empty()]);
    let mut list = vec![FinSeq::empty()];
    let mut attempts = 0;
    while set.len() < nodes && attempts < nodes * 64 {
        attempts += 1;
        let parent = &list[rng.gen_range(0..list.len())];
        if parent.len() >= depth {
            continue;
        }
        let child = parent.child(rng.gen_range(0..k));
        if set.insert(child.clone()) {
            list.push(child);
        }
    }
    ExplicitTree::from_nodes(set).expect("children are added under members")
}

/// Random LPO rows. Each row has a zero with probability one half, at a
/// uniform position.
pub fn random_lpo(rng: &mut impl Rng, rows: usize, budget: usize) -> LpoInstance {
    let rows = (0..rows)
        .map(|_| {
            let mut row: Vec<u64> = (0..budget).map(|_| rng.gen_range(1..4)).collect();
            if budget > 0 && rng.gen_bool(0.5) {
                let j = rng.gen_range(0..budget);
                row[j] = 0;
                if rng.gen_bool(0.5) {
                    row[rng.gen_range(j..budget)] = 0;
                }
            }
            row
        })
        .collect();
    LpoInstance::new(rows, budget).expect("rows have the budget length")
}

/// A generator seeded for case `index` of a run seeded with `seed`.
pub fn case_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Number of nodes of the complete `k`-branching tree of height `d`, or
/// `None` past `cap`.
fn full_size(k: u64, d: usize, cap: usize) -> Option<usize> {
    let mut level: usize = 1;
    let mut total: usize = 1;
    for _ in 0..d {
        level = level.checked_mul(k as usize)?;
        total = total.checked_add(level)?;
        if total > cap {
            return None;
        }
    }
    (total <= cap).then_some(total)
}

pub fn generate(spec: &GeneratorSpec) -> Result<Generated> {
    let over = |what: &str| Error::resource(format!("{what} exceeds the node budget {}", spec.budget));
    Ok(match spec.name {
        GeneratorName::Full => {
            full_size(spec.k, spec.d, spec.budget).ok_or_else(|| over("full tree"))?;
            Generated::Tree(full_generator(spec.k, spec.d).truncate_capped(spec.d, spec.budget)?)
        }
        GeneratorName::Path => {
            Generated::Tree(path_generator(spec.d).truncate_capped(spec.d, spec.budget)?)
        }
        GeneratorName::Comb => {
            Generated::Tree(comb_generator(spec.d).truncate_capped(spec.d, spec.budget)?)
        }
        GeneratorName::FiniteRandom => {
            if spec.nodes > spec.budget {
                return Err(over("requested node count"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            Generated::Tree(TreeWithLeaves::exact(finite_random(&mut rng, spec.nodes, spec.d, spec.k)))
        }
        GeneratorName::Lpo => {
            if spec.nodes.saturating_mul(spec.d) > spec.budget {
                return Err(over("row table"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            Generated::Lpo(random_lpo(&mut rng, spec.nodes, spec.d))
        }
    })
}

/// All trees with exactly `n` nodes whose children are labelled `0..c`
/// without gaps, one per ordered shape.
pub fn plane_trees(n: usize) -> Vec<ExplicitTree> {
    // A root over a forest: child `j` carries the `j`-th tree of the forest.
    fn rooted(forest: &[Vec<FinSeq>]) -> Vec<FinSeq> {
        let mut nodes = vec![FinSeq::empty()];
        for (j, sub) in forest.iter().enumerate() {
            for node in sub {
                let mut e = vec![j as u64];
                e.extend_from_slice(node.entries());
                nodes.push(FinSeq::new(e));
            }
        }
        nodes
    }
    if n == 0 {
        return vec![ExplicitTree::empty()];
    }
    // forests[m]: every ordered forest with m nodes in total.
    let mut forests: Vec<Vec<Vec<Vec<FinSeq>>>> = vec![vec![vec![]]];
    for m in 1..n {
        let mut all = Vec::new();
        for first in 1..=m {
            for head in &forests[first - 1] {
                let tree = rooted(head);
                for tail in &forests[m - first] {
                    let mut forest = vec![tree.clone()];
                    forest.extend(tail.iter().cloned());
                    all.push(forest);
                }
            }
        }
        forests.push(all);
    }
    forests[n - 1]
        .iter()
        .map(|f| ExplicitTree::from_nodes(rooted(f)).expect("plane trees are prefix-closed"))
        .collect()
}
