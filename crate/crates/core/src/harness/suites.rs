use std::collections::BTreeSet;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::generators::{
    case_rng, comb_generator, finite_random, full_generator, path_generator, plane_trees, random_lpo,
};
use super::oracle::{gadget_rank, has_depth, splitting_levels};
use crate::error::{Error, Result};
use crate::hypercolor::{
    calibrated_depth, decode_coloring, hpc_brute, hpc_enumerate, hpc_to_wf_tree, is_proper, wf_to_hpc,
    Coloring, Hypergraph, SEARCH_CEILING,
};
use crate::reductions::{
    hat, injection_to_lpo, kernel_from_wf, leaves_from_lpo, lpo_from_leafset, lpo_window, pk_to_wf,
    solve_lpo, tree_to_lpo, wf_answers, wf_to_pk,
};
use crate::seqcode::{shift_up, FinSeq};
use crate::transforms::{leaf_deleted, map_kernel_up, star_invert, star_leaves, t_minus, t_plus, t_star};
use crate::trees::{bleaf, leaf_brute, BoundingFunction, ExplicitTree, GeneratedTree, TreeQuery, TreeWithLeaves};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Transforms,
    B2,
    B7Forward,
    B7Backward,
    C1Forward,
    C1Backward,
    Lpo,
    Hat,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Transforms,
        Suite::B2,
        Suite::Lpo,
        Suite::B7Forward,
        Suite::B7Backward,
        Suite::C1Forward,
        Suite::C1Backward,
        Suite::Hat,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Transforms => "transforms",
            Suite::B2 => "b2",
            Suite::B7Forward => "b7-forward",
            Suite::B7Backward => "b7-backward",
            Suite::C1Forward => "c1-forward",
            Suite::C1Backward => "c1-backward",
            Suite::Lpo => "lpo",
            Suite::Hat => "hat",
        }
    }

    /// `all` expands to every suite.
    pub fn parse_list(name: &str) -> Result<Vec<Suite>> {
        if name == "all" {
            Ok(Suite::ALL.to_vec())
        } else {
            Ok(vec![name.parse()?])
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::rejected(format!("unknown suite {s:?}")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Seed and a multiplier on the default case counts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub scale: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 0, scale: 1.0 }
    }
}

impl SuiteConfig {
    fn count(&self, n: usize) -> usize {
        ((n as f64 * self.scale).round() as usize).max(1)
    }
}

/// Largest random tree in the transform, b2 and lpo corpora.
pub const CORPUS_MAX_NODES: usize = 64;
pub const CORPUS_MAX_DEPTH: usize = 6;
/// Largest tree in the b7-backward and c1-backward corpora.
pub const SMALL_MAX_NODES: usize = 12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub run: usize,
    pub passed: usize,
    /// Input and failed check of the first failing case, by case index.
    pub counterexample: Option<Value>,
    pub wall_ms: u64,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.passed == self.run
    }

    /// Writes the counterexample to `dir/<suite>.json` and returns the path.
    pub fn emit(&self, dir: &Path) -> Result<Option<PathBuf>> {
        let Some(cex) = &self.counterexample else { return Ok(None) };
        std::fs::create_dir_all(dir)?;
        let path = dir.join(format!("{}.json", self.suite));
        std::fs::write(&path, serde_json::to_string_pretty(cex)?)?;
        Ok(Some(path))
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.ok() { "ok" } else { "FAILED" };
        write!(f, "{:<12} {status:<6} {}/{} passed in {} ms", self.suite, self.passed, self.run, self.wall_ms)?;
        if let Some(c) = &self.counterexample {
            write!(f, "\n  counterexample: {c}")?;
        }
        Ok(())
    }
}

/// `Ok(None)` passes, `Ok(Some(why))` fails.
type Check = Result<Option<String>>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Ok(Some(format!($($msg)+)));
        }
    };
}

/// Runs one case. Resource errors abort the suite; other errors from the
/// library count as failures of the case.
fn judge(input: impl FnOnce() -> Value, body: impl FnOnce() -> Check) -> Result<Option<Value>> {
    match body() {
        Ok(None) => Ok(None),
        Ok(Some(why)) => Ok(Some(json!({ "input": input(), "failed": why }))),
        Err(e @ Error::Resource(_)) => Err(e),
        Err(e) => Ok(Some(json!({ "input": input(), "failed": format!("error: {e}") }))),
    }
}

#[derive(Default)]
struct Tally {
    run: usize,
    passed: usize,
    counterexample: Option<Value>,
}

impl Tally {
    fn batch(&mut self, n: usize, case: impl Fn(usize) -> Result<Option<Value>> + Sync + Send) -> Result<()> {
        let outcomes: Vec<Result<Option<Value>>> = (0..n).into_par_iter().map(case).collect();
        for o in outcomes {
            self.run += 1;
            match o? {
                None => self.passed += 1,
                Some(c) => {
                    self.counterexample.get_or_insert(c);
                }
            }
        }
        Ok(())
    }
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut t = Tally::default();
    match suite {
        Suite::Transforms => transforms(cfg, &mut t)?,
        Suite::B2 => b2(cfg, &mut t)?,
        Suite::Lpo => lpo(cfg, &mut t)?,
        Suite::B7Forward => b7_forward(cfg, &mut t)?,
        Suite::B7Backward => b7_backward(cfg, &mut t)?,
        Suite::C1Forward => c1_forward(&mut t)?,
        Suite::C1Backward => c1_backward(cfg, &mut t)?,
        Suite::Hat => hat_suite(cfg, &mut t)?,
    }
    Ok(SuiteReport {
        suite: suite.name().to_string(),
        run: t.run,
        passed: t.passed,
        counterexample: t.counterexample,
        wall_ms: start.elapsed().as_millis() as u64,
    })
}

/// Tree `index` of the random corpus for `seed`: up to `max_nodes` nodes,
/// height up to `max_depth`, entries below 1 to 4.
pub fn corpus_tree(seed: u64, index: usize, max_nodes: usize, max_depth: usize) -> ExplicitTree {
    let mut rng = case_rng(seed, index as u64);
    let nodes = rng.gen_range(1..=max_nodes);
    let depth = rng.gen_range(1..=max_depth);
    let k = rng.gen_range(1..=4);
    finite_random(&mut rng, nodes, depth, k)
}

fn tree_input(tree: &ExplicitTree) -> impl FnOnce() -> Value + '_ {
    move || json!({ "tree": tree })
}

fn transforms(cfg: &SuiteConfig, t: &mut Tally) -> Result<()> {
    t.batch(cfg.count(500), |i| {
        let tree = corpus_tree(cfg.seed, i, CORPUS_MAX_NODES, CORPUS_MAX_DEPTH);
        judge(tree_input(&tree), || check_transforms(&tree))
    })
}

/// Star-transform laws for one tree.
pub fn check_transforms(tree: &ExplicitTree) -> Check {
    let star = t_star(tree);
    ensure!(star.star.len() == 2 * tree.len(), "|T*| = {} but |T| = {}", star.star.len(), tree.len());
    let brute = leaf_brute(&star.star);
    ensure!(star_leaves(&star) == brute, "star_leaves differs from the leaf oracle on T*");
    ensure!(&star_invert(&star.star)? == tree, "star_invert(T*) is not T");
    ensure!(leaf_deleted(&star) == t_plus(tree), "leaf-deleted T* is not T+");
    ensure!(&t_minus(&t_plus(tree)) == tree, "T+ then T- is not T");
    for d in 0..=tree.height().map_or(0, |h| h + 1) {
        let inner = star.star.iter().filter(|s| s.len() == d && !brute.contains(*s)).count();
        ensure!(
            tree.nodes_at_depth(d)?.len() == inner,
            "depth {d}: T has {} nodes, T* has {inner} non-leaves",
            tree.nodes_at_depth(d)?.len()
        );
    }
    Ok(None)
}

fn b2(cfg: &SuiteConfig, t: &mut Tally) -> Result<()> {
    t.batch(cfg.count(500), |i| {
        let tree = corpus_tree(cfg.seed, i, CORPUS_MAX_NODES, CORPUS_MAX_DEPTH);
        judge(tree_input(&tree), || check_depth_and_kernel(&tree, CORPUS_MAX_DEPTH))
    })
}

/// Depth and kernel correspondence between `T` and `T⁺`, for every `d ≤ max_d`,
/// plus monotonicity of the probes and agreement with the splitting oracle.
pub fn check_depth_and_kernel(tree: &ExplicitTree, max_d: usize) -> Check {
    let plus = t_plus(tree);
    let deleted = leaf_deleted(&t_star(tree));
    let levels = splitting_levels(tree, max_d + 1);
    for d in 0..=max_d {
        let up: BTreeSet<FinSeq> = tree.nodes_at_depth(d)?.iter().map(shift_up).collect();
        ensure!(plus.nodes_at_depth(d)? == up, "depth {d}: T+ nodes are not the +1 image");
        ensure!(plus.wf_probe(d)? == tree.wf_probe(d)?, "depth {d}: wf_probe differs on T+");
        let kernel = tree.kernel_probe(d)?;
        ensure!(
            deleted.kernel_probe(d)? == map_kernel_up(&kernel),
            "d = {d}: kernel of leaf-deleted T* is not the +1 image"
        );
        ensure!(kernel == levels[d], "d = {d}: kernel_probe differs from the splitting oracle");
        let next = tree.kernel_probe(d + 1)?;
        ensure!(next.is_subset(&kernel), "d = {d}: kernel grew at d + 1");
        if tree.wf_probe(d)? {
            ensure!(tree.wf_probe(d + 1)?, "wf_probe({d}) holds but wf_probe({}) fails", d + 1);
        }
        for s in &kernel {
            for p in s.proper_prefixes() {
                ensure!(kernel.contains(&p), "d = {d}: {s} splits but its prefix {p} does not");
            }
        }
    }
    Ok(None)
}

fn lpo(cfg: &SuiteConfig, t: &mut Tally) -> Result<()> {
    t.batch(cfg.count(500), |i| {
        let tree = corpus_tree(cfg.seed, i, CORPUS_MAX_NODES, CORPUS_MAX_DEPTH);
        judge(tree_input(&tree), || {
            let slack = case_rng(cfg.seed ^ 0x51ac, i as u64).gen_range(0..3);
            check_leaf_routes(&tree, slack)
        })
    })?;
    t.batch(cfg.count(200), |i| {
        let mut rng = case_rng(cfg.seed ^ 0x1f0, i as u64);
        let rows = rng.gen_range(0..8);
        let budget = rng.gen_range(0..8);
        let inst = random_lpo(&mut rng, rows, budget);
        judge(
            || json!({ "lpo": &inst }),
            || {
                let window = lpo_window(&inst)?;
                ensure!(
                    lpo_from_leafset(&inst, &window.leaves) == solve_lpo(&inst),
                    "answers read from the LPO tree differ from the solver"
                );
                Ok(None)
            },
        )
    })?;
    t.batch(cfg.count(200), |i| {
        let mut rng = case_rng(cfg.seed ^ 0x1a7, i as u64);
        let rows = rng.gen_range(0..12);
        let len = rng.gen_range(0..10);
        let mut pool: Vec<u64> = (0..2 * len as u64 + 4).collect();
        pool.shuffle(&mut rng);
        let f: Vec<u64> = pool[..len].to_vec();
        judge(
            || json!({ "injection": &f, "rows": rows }),
            || check_injection(&f, rows),
        )
    })
}

/// `bleaf` under the tightest bound and a looser one, and the LPO roundtrip,
/// all against the leaf oracle.
pub fn check_leaf_routes(tree: &ExplicitTree, slack: u64) -> Check {
    let brute = leaf_brute(tree);
    let tight = BoundingFunction::tightest(tree);
    ensure!(bleaf(tree, &tight)? == brute, "bleaf with the tightest bound differs");
    let loose = BoundingFunction::from_fn(move |i| tight.at(i) + slack);
    ensure!(bleaf(tree, &loose)? == brute, "bleaf with slack {slack} differs");
    ensure!(tree.leaves() == brute, "leaves() differs from the leaf oracle");
    let (inst, order) = tree_to_lpo(tree);
    ensure!(leaves_from_lpo(&order, &solve_lpo(&inst)) == brute, "LPO roundtrip differs");
    Ok(None)
}

pub fn check_injection(f: &[u64], rows: usize) -> Check {
    let answer = solve_lpo(&injection_to_lpo(f, rows)?);
    let range: BTreeSet<usize> = f.iter().map(|&v| v as usize).filter(|&v| v < rows).collect();
    ensure!(answer.ones() == range, "answer {answer} is not the range of f below {rows}");
    Ok(None)
}

/// Member `index` of the b7-forward families: a small random tree, a path of
/// height at most 5, or a complete binary tree of height at most 3.
pub fn family_member(rng: &mut impl Rng) -> ExplicitTree {
    match rng.gen_range(0..3) {
        0 => {
            let nodes = rng.gen_range(1..=SMALL_MAX_NODES);
            let depth = rng.gen_range(1..=5);
            let k = rng.gen_range(1..=3);
            finite_random(rng, nodes, depth, k)
        }
        1 => {
            let h = rng.gen_range(0..=5);
            path_generator(h).truncate(h).expect("paths are enumerable").into_finite().tree
        }
        _ => {
            let h = rng.gen_range(0..=3);
            full_generator(2, h).truncate(h).expect("full trees are enumerable").into_finite().tree
        }
    }
}

pub fn b7_family(seed: u64, index: usize) -> Vec<ExplicitTree> {
    let mut rng = case_rng(seed ^ 0xb7f, index as u64);
    let n = rng.gen_range(1..=3);
    (0..n).map(|_| family_member(&mut rng)).collect()
}

fn b7_forward(cfg: &SuiteConfig, t: &mut Tally) -> Result<()> {
    t.batch(cfg.count(120), |i| {
        let family = b7_family(cfg.seed, i);
        judge(|| json!({ "family": &family }), || check_b7_forward(&family, 5))
    })
}

/// Splitting at `⟨i⟩` in the interleaving gadget against depth in member `i`.
///
/// Checked for every `d ≤ max_d`: the library agrees with the exhaustive
/// splitting oracle; `d`-splitting holds exactly when `d` is at most the
/// member's gadget rank; a node at depth `d` gives `d`-splitting, which gives
/// a node at depth `⌈d/2⌉`; and for non-branching members, `d`-splitting
/// holds exactly when there is a node at depth `d`.
pub fn check_b7_forward(family: &[ExplicitTree], max_d: usize) -> Check {
    let gadget = wf_to_pk(family);
    let levels = splitting_levels(&gadget, max_d);
    for (i, member) in family.iter().enumerate() {
        let root = FinSeq::new(vec![i as u64]);
        let rank = gadget_rank(member);
        for d in 0..=max_d {
            let split = gadget.has_d_splitting(&root, d)?;
            let deep = has_depth(member, d);
            ensure!(split == levels[d].contains(&root), "member {i}, d = {d}: splitting differs from the oracle");
            ensure!(split == (d <= rank), "member {i}, d = {d}: splitting is {split} but the gadget rank is {rank}");
            if deep {
                ensure!(split, "member {i} has depth {d} but ⟨{i}⟩ lacks {d}-splitting");
            }
            if split {
                ensure!(has_depth(member, d.div_ceil(2)), "member {i}: {d}-splitting without depth {}", d.div_ceil(2));
            }
            if member.is_non_branching() {
                ensure!(split == deep, "non-branching member {i}, d = {d}: splitting {split}, depth {deep}");
            }
        }
    }
    Ok(None)
}

fn b7_backward(cfg: &SuiteConfig, t: &mut Tally) -> Result<()> {
    t.batch(cfg.count(200), |i| {
        let tree = corpus_tree(cfg.seed ^ 0xb7b, i, SMALL_MAX_NODES, 5);
        judge(tree_input(&tree), || check_b7_backward(&tree, 3))
    })
}

/// `T_σ` reaches depth `d + 1` exactly when `σ` has `d`-splitting, and the
/// kernel read back from the well-foundedness answers is `kernel_probe`.
pub fn check_b7_backward(tree: &ExplicitTree, max_d: usize) -> Check {
    let levels = splitting_levels(tree, max_d);
    let tuple_trees = pk_to_wf(tree);
    for tt in &tuple_trees {
        for d in 0..=max_d {
            let deep = tt.has_node_at_depth(d + 1);
            let split = levels[d].contains(tt.root());
            ensure!(deep == split, "σ = {}, d = {d}: depth {} is {deep}, splitting {split}", tt.root(), d + 1);
        }
    }
    for d in 0..=max_d {
        let kernel = kernel_from_wf(tree, &wf_answers(&tuple_trees, d))?;
        ensure!(kernel == tree.kernel_probe(d)?, "d = {d}: composed kernel differs from kernel_probe");
        ensure!(kernel == levels[d], "d = {d}: composed kernel differs from the oracle");
    }
    Ok(None)
}

/// Every hypergraph on `n` vertices with at most `max_edges` edges, each of
/// cardinality at most `max_card`, edges taken as a multiset.
pub fn all_hypergraphs(n: usize, max_edges: usize, max_card: usize) -> Vec<Hypergraph> {
    let subsets: Vec<Vec<usize>> = (0u32..1 << n)
        .filter(|m| m.count_ones() as usize <= max_card)
        .map(|m| (0..n).filter(|v| m >> v & 1 == 1).collect())
        .collect();
    let mut out = Vec::new();
    fn pick(from: usize, left: usize, subsets: &[Vec<usize>], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(cur.clone());
        if left == 0 {
            return;
        }
        for j in from..subsets.len() {
            cur.push(j);
            pick(j, left - 1, subsets, cur, out);
            cur.pop();
        }
    }
    let mut choices = Vec::new();
    pick(0, max_edges, &subsets, &mut Vec::new(), &mut choices);
    for c in choices {
        let edges = c.iter().map(|&j| subsets[j].clone()).collect();
        out.push(Hypergraph::new(n, edges).expect("edges are in range"));
    }
    out
}

fn c1_forward(t: &mut Tally) -> Result<()> {
    let cases: Vec<(Hypergraph, u32)> = (0..=4)
        .flat_map(|n| all_hypergraphs(n, 3, 3))
        .flat_map(|h| [(h.clone(), 2), (h, 3)])
        .collect();
    t.batch(cases.len(), |i| {
        let (h, k) = &cases[i];
        judge(|| json!({ "hypergraph": h, "k": k }), || check_c1_forward(h, *k))
    })
}

/// Largest number of calibrated-depth nodes decoded per hypergraph.
pub const DECODE_SAMPLE: usize = 256;

/// Colorability against the coloring tree, with both coloring searches and
/// the decoded colorings checked.
pub fn check_c1_forward(h: &Hypergraph, k: u32) -> Check {
    let brute = hpc_brute(h, k, SEARCH_CEILING)?;
    let listed = hpc_enumerate(h, k, SEARCH_CEILING)?;
    ensure!(brute.colorable == listed.colorable, "backtracking and enumeration disagree");
    ensure!(brute.witness == listed.witness, "backtracking and enumeration pick different witnesses");
    if let Some(w) = &brute.witness {
        ensure!(is_proper(h, w)?, "witness {:?} is not proper", w.colors);
    }
    let tree = hpc_to_wf_tree(h, k)?;
    let depth = calibrated_depth(h);
    let found = tree.find_node_at_depth(depth)?;
    ensure!(
        brute.colorable == found.is_some(),
        "colorable is {} but a node at depth {depth} exists is {}",
        brute.colorable,
        found.is_some()
    );
    for node in sample_at_depth(&tree, depth, DECODE_SAMPLE)? {
        let f = decode_coloring(&node, k)?;
        let f = Coloring { colors: f.colors[..h.vertex_count()].to_vec(), k };
        ensure!(is_proper(h, &f)?, "node {node} decodes to an improper coloring {:?}", f.colors);
    }
    let mut bigger = h.clone();
    let v = bigger.add_vertex();
    bigger.add_edge(vec![v])?;
    ensure!(
        hpc_brute(&bigger, k, SEARCH_CEILING)?.colorable == brute.colorable,
        "a disjoint singleton edge changed colorability"
    );
    Ok(None)
}

/// Up to `limit` members of length `depth`, depth first.
fn sample_at_depth(tree: &GeneratedTree, depth: usize, limit: usize) -> Result<Vec<FinSeq>> {
    let mut out = Vec::new();
    let mut stack = vec![FinSeq::empty()];
    if !tree.contains(&FinSeq::empty()) {
        return Ok(out);
    }
    while let Some(node) = stack.pop() {
        if out.len() >= limit {
            break;
        }
        if node.len() == depth {
            out.push(node);
        } else {
            stack.extend(tree.children(&node)?.into_iter().rev());
        }
    }
    Ok(out)
}

/// Windows of the infinite generators used in c1-backward and hat.
pub fn generator_windows(max_d: usize) -> Result<Vec<(String, usize, TreeWithLeaves)>> {
    let mut out = Vec::new();
    for d in 0..=max_d {
        out.push((format!("full(2,{d})"), d, full_generator(2, d).truncate(d)?));
        out.push((format!("path({d})"), d, path_generator(d).truncate(d)?));
        out.push((format!("comb({d})"), d, comb_generator(d).truncate(d)?));
    }
    Ok(out)
}

fn c1_backward(cfg: &SuiteConfig, t: &mut Tally) -> Result<()> {
    let mut trees: Vec<ExplicitTree> = (0..cfg.count(200))
        .map(|i| corpus_tree(cfg.seed ^ 0xc1b, i, SMALL_MAX_NODES, 5))
        .collect();
    trees.extend((0..=7).flat_map(plane_trees));
    t.batch(trees.len(), |i| {
        let tree = &trees[i];
        judge(tree_input(tree), || check_c1_genuine(tree))
    })?;
    let windows = generator_windows(5)?;
    t.batch(windows.len(), |i| {
        let (name, d, w) = &windows[i];
        judge(|| json!({ "generator": name, "window": w }), || check_c1_window(w, *d))
    })
}

/// With genuine leaves the gadget has no proper coloring, for 2 and 3 colors.
pub fn check_c1_genuine(tree: &ExplicitTree) -> Check {
    let tl = TreeWithLeaves::exact(tree.clone());
    for k in [2, 3] {
        let out = hpc_brute(&wf_to_hpc(&tl, k)?, k, SEARCH_CEILING)?;
        ensure!(!out.colorable, "gadget for a finite tree is {k}-colorable");
    }
    Ok(None)
}

/// On a depth-`d` window whose frontier stands for unexplored children, the
/// gadget is colorable exactly when the window has a node at depth `d`, for 2
/// colors and for the 3-color augmentation alike.
pub fn check_c1_window(w: &TreeWithLeaves, d: usize) -> Check {
    let reaches = has_depth(&w.tree, d);
    let mut bits = Vec::new();
    for k in [2, 3] {
        let h = wf_to_hpc(w, k)?;
        let out = hpc_brute(&h, k, SEARCH_CEILING)?;
        ensure!(out.colorable == reaches, "k = {k}: colorable {} but depth {d} reached {reaches}", out.colorable);
        if let Some(f) = &out.witness {
            ensure!(is_proper(&h, f)?, "k = {k}: witness is not proper");
        }
        bits.push(out.colorable);
    }
    ensure!(bits[0] == bits[1], "augmented 3-color gadget disagrees with the 2-color gadget");
    Ok(None)
}

fn hat_suite(cfg: &SuiteConfig, t: &mut Tally) -> Result<()> {
    t.batch(cfg.count(20), |i| {
        let family = hat_family(cfg.seed, i)?;
        judge(|| json!({ "family": &family }), || check_hat(&family))
    })
}

/// Ten trees: seven small random trees and three generator windows.
pub fn hat_family(seed: u64, index: usize) -> Result<Vec<TreeWithLeaves>> {
    let mut out: Vec<TreeWithLeaves> = (0..7)
        .map(|j| TreeWithLeaves::exact(corpus_tree(seed ^ 0x4a7, index * 7 + j, SMALL_MAX_NODES, 5)))
        .collect();
    let d = 1 + index % 4;
    out.push(full_generator(2, d).truncate(d)?);
    out.push(path_generator(d).truncate(d)?);
    out.push(comb_generator(d).truncate(d)?);
    Ok(out)
}

/// The parallelized WF probe and coloring search against element-by-element
/// evaluation.
pub fn check_hat(family: &[TreeWithLeaves]) -> Check {
    for d in 0..=6 {
        let par = hat(|w: &TreeWithLeaves| w.tree.wf_probe(d), family)?;
        let seq = family.iter().map(|w| w.tree.wf_probe(d)).collect::<Result<Vec<_>>>()?;
        ensure!(par == seq, "d = {d}: parallel WF probes differ");
    }
    let graphs = family.iter().map(|w| wf_to_hpc(w, 2)).collect::<Result<Vec<_>>>()?;
    let par = hat(|h: &Hypergraph| Ok(hpc_brute(h, 2, SEARCH_CEILING)?.bit()), &graphs)?;
    let seq = graphs
        .iter()
        .map(|h| Ok(hpc_brute(h, 2, SEARCH_CEILING)?.bit()))
        .collect::<Result<Vec<_>>>()?;
    ensure!(par == seq, "parallel coloring answers differ");
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_roundtrip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!(Suite::parse_list("all").unwrap().len(), 8);
        assert!(matches!("bogus".parse::<Suite>(), Err(Error::Rejected(_))));
    }

    #[test]
    fn hypergraph_enumeration_counts() {
        assert_eq!(all_hypergraphs(0, 3, 3).len(), 4);
        assert_eq!(all_hypergraphs(1, 3, 3).len(), 10);
        assert_eq!(all_hypergraphs(2, 1, 3).len(), 5);
    }

    #[test]
    fn corpus_is_deterministic() {
        assert_eq!(corpus_tree(3, 9, 64, 6), corpus_tree(3, 9, 64, 6));
    }

    #[test]
    fn small_runs_pass() {
        let cfg = SuiteConfig { seed: 1, scale: 0.05 };
        for s in [Suite::Transforms, Suite::B2, Suite::Lpo, Suite::B7Backward, Suite::Hat] {
            let r = run_suite(s, &cfg).unwrap();
            assert!(r.ok(), "{r}");
            assert!(r.counterexample.is_none());
        }
    }

    #[test]
    fn counterexamples_are_reported() {
        let mut t = Tally::default();
        t.batch(5, |i| judge(|| json!(i), || Ok((i % 2 == 1).then(|| "odd".to_string())))).unwrap();
        assert_eq!((t.run, t.passed), (5, 3));
        assert_eq!(t.counterexample, Some(json!({ "input": 1, "failed": "odd" })));
    }
}
