//! One test per acceptance criterion. Each prints a single PASS/FAIL line
//! with its wall time and limit.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng;

use treelab::harness::generators::{case_rng, comb_generator, full_generator, path_generator, plane_trees};
use treelab::harness::oracle::{has_depth, splitting_levels};
use treelab::harness::suites::{all_hypergraphs, b7_family, corpus_tree};
use treelab::hypercolor::{
    calibrated_depth, decode_coloring, hpc_brute, hpc_to_wf_tree, is_proper, wf_to_hpc, Coloring, Hypergraph,
    SEARCH_CEILING,
};
use treelab::reductions::{
    hat, injection_to_lpo, kernel_from_wf, leaves_from_lpo, pk_to_wf, solve_lpo, tree_to_lpo, wf_answers, wf_to_pk,
};
use treelab::seqcode::{shift_up, FinSeq};
use treelab::transforms::{leaf_deleted, map_kernel_up, star_invert, star_leaves, t_plus, t_star};
use treelab::trees::{bleaf, leaf_brute, BoundingFunction, ExplicitTree, TreeQuery, TreeWithLeaves};

const SEED: u64 = 0;

/// Prints the verdict line and fails the test on a violation or a timeout.
fn verdict(id: u32, name: &str, limit_s: u64, start: Instant, failures: &[String]) {
    let elapsed = start.elapsed();
    let limit = Duration::from_secs(limit_s);
    let ok = failures.is_empty() && elapsed < limit;
    println!(
        "criterion {id} {name}: {} ({} failures, {:.2} s, limit {limit_s} s)",
        if ok { "PASS" } else { "FAIL" },
        failures.len(),
        elapsed.as_secs_f64()
    );
    assert!(failures.is_empty(), "criterion {id}: {} failures, first: {}", failures.len(), failures[0]);
    assert!(elapsed < limit, "criterion {id}: {elapsed:?} exceeds {limit:?}");
}

fn corpus(n: usize) -> Vec<ExplicitTree> {
    (0..n).map(|i| corpus_tree(SEED, i, 64, 6)).collect()
}

#[test]
fn criterion_1_transforms() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for (i, t) in corpus(500).iter().enumerate() {
        assert!(t.len() <= 64);
        let star = t_star(t);
        if star.star.len() != 2 * t.len() {
            failures.push(format!("tree {i}: |T*| = {}, |T| = {}", star.star.len(), t.len()));
        }
        if star_leaves(&star) != leaf_brute(&star.star) {
            failures.push(format!("tree {i}: star_leaves differs from leaf_brute"));
        }
        if star_invert(&star.star).ok().as_ref() != Some(t) {
            failures.push(format!("tree {i}: star_invert(t_star(T)) is not T"));
        }
        if leaf_deleted(&star) != t_plus(t) {
            failures.push(format!("tree {i}: leaf-deleted T* is not T+"));
        }
    }
    verdict(1, "transform suite", 5, start, &failures);
}

#[test]
fn criterion_2_depth_and_kernel_correspondence() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for (i, t) in corpus(500).iter().enumerate() {
        let plus = t_plus(t);
        let deleted = leaf_deleted(&t_star(t));
        for d in 0..=6 {
            let up: BTreeSet<FinSeq> = t.nodes_at_depth(d).unwrap().iter().map(shift_up).collect();
            if plus.nodes_at_depth(d).unwrap() != up {
                failures.push(format!("tree {i}, d = {d}: depth sets do not correspond"));
            }
            if deleted.kernel_probe(d).unwrap() != map_kernel_up(&t.kernel_probe(d).unwrap()) {
                failures.push(format!("tree {i}, d = {d}: kernels do not correspond"));
            }
        }
    }
    verdict(2, "depth and kernel correspondence", 10, start, &failures);
}

#[test]
fn criterion_3_leaf_routes() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for (i, t) in corpus(500).iter().enumerate() {
        let brute = leaf_brute(t);
        if bleaf(t, &BoundingFunction::tightest(t)).unwrap() != brute {
            failures.push(format!("tree {i}: bleaf differs from leaf_brute"));
        }
        let (inst, order) = tree_to_lpo(t);
        if leaves_from_lpo(&order, &solve_lpo(&inst)) != brute {
            failures.push(format!("tree {i}: LPO roundtrip differs from leaf_brute"));
        }
    }
    for i in 0..200u64 {
        let mut rng = case_rng(SEED ^ 0xacc3, i);
        let rows = rng.gen_range(1..16);
        let len = rng.gen_range(0..12);
        let mut pool: Vec<u64> = (0..24).collect();
        pool.shuffle(&mut rng);
        let f = &pool[..len];
        let ones = solve_lpo(&injection_to_lpo(f, rows).unwrap()).ones();
        let range: BTreeSet<usize> = f.iter().map(|&v| v as usize).filter(|&v| v < rows).collect();
        if ones != range {
            failures.push(format!("injection {f:?}, rows {rows}: got {ones:?}"));
        }
    }
    verdict(3, "bleaf, LPO roundtrip and injection range", 5, start, &failures);
}

#[test]
fn criterion_4_interleaving_gadget_depth_law() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for f in 0..120 {
        let family = b7_family(SEED, f);
        let gadget = wf_to_pk(&family);
        let levels = splitting_levels(&gadget, 5);
        for (i, member) in family.iter().enumerate() {
            let root = FinSeq::new(vec![i as u64]);
            for d in 0..=5 {
                let split = gadget.has_d_splitting(&root, d).unwrap();
                if split != levels[d].contains(&root) {
                    failures.push(format!("family {f}, member {i}, d = {d}: splitting differs from the oracle"));
                }
                if split != has_depth(member, d) {
                    failures.push(format!(
                        "family {f}, member {i} = {}, d = {d}: {d}-splitting is {split}, depth {d} is {}",
                        serde_json::to_string(member).unwrap(),
                        has_depth(member, d)
                    ));
                }
            }
        }
    }
    verdict(4, "interleaving gadget splitting iff depth", 15, start, &failures);
}

#[test]
fn criterion_5_tuple_tree_depth_law_and_composition() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for i in 0..200 {
        let t = corpus_tree(SEED ^ 0xb7b, i, 12, 5);
        let levels = splitting_levels(&t, 3);
        let tts = pk_to_wf(&t);
        for tt in &tts {
            for d in 0..=3 {
                if tt.has_node_at_depth(d + 1) != t.has_d_splitting(tt.root(), d).unwrap() {
                    failures.push(format!("tree {i}, σ = {}, d = {d}: depth law fails", tt.root()));
                }
                if t.has_d_splitting(tt.root(), d).unwrap() != levels[d].contains(tt.root()) {
                    failures.push(format!("tree {i}, σ = {}, d = {d}: splitting differs from the oracle", tt.root()));
                }
            }
        }
        for d in 0..=3 {
            if kernel_from_wf(&t, &wf_answers(&tts, d)).unwrap() != t.kernel_probe(d).unwrap() {
                failures.push(format!("tree {i}, d = {d}: composed kernel differs"));
            }
        }
    }
    verdict(5, "tuple trees and composed kernel", 15, start, &failures);
}

#[test]
fn criterion_6_coloring_tree() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut cases = 0;
    for n in 0..=4 {
        for h in all_hypergraphs(n, 3, 3) {
            for k in [2, 3] {
                cases += 1;
                let colorable = hpc_brute(&h, k, SEARCH_CEILING).unwrap().colorable;
                let depth = calibrated_depth(&h);
                let node = hpc_to_wf_tree(&h, k).unwrap().find_node_at_depth(depth).unwrap();
                if colorable != node.is_some() {
                    failures.push(format!("{} k = {k}: colorable {colorable}", serde_json::to_string(&h).unwrap()));
                }
                if let Some(node) = node {
                    let f = decode_coloring(&node, k).unwrap();
                    let f = Coloring { colors: f.colors[..n].to_vec(), k };
                    if !is_proper(&h, &f).unwrap() {
                        failures.push(format!("{node} decodes to an improper coloring"));
                    }
                }
            }
        }
    }
    assert_eq!(cases, 2 * (4 + 10 + 35 + 165 + 816));
    verdict(6, "coloring tree at calibrated depth", 20, start, &failures);
}

#[test]
fn criterion_7_coloring_gadget() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let shapes: Vec<ExplicitTree> = (0..=12).flat_map(plane_trees).collect();
    let random: Vec<ExplicitTree> = (0..200).map(|i| corpus_tree(SEED ^ 0xc1b, i, 12, 5)).collect();
    let colorable: Vec<(usize, u32)> = shapes
        .iter()
        .chain(&random)
        .enumerate()
        .flat_map(|(i, t)| {
            let tl = TreeWithLeaves::exact(t.clone());
            [2, 3]
                .into_iter()
                .filter(move |&k| hpc_brute(&wf_to_hpc(&tl, k).unwrap(), k, SEARCH_CEILING).unwrap().colorable)
                .map(move |k| (i, k))
        })
        .collect();
    for (i, k) in colorable {
        failures.push(format!("finite tree {i} gives a {k}-colorable gadget"));
    }
    for d in 0..=5 {
        let windows = [
            ("full", full_generator(2, d).truncate(d).unwrap()),
            ("path", path_generator(d).truncate(d).unwrap()),
            ("comb", comb_generator(d).truncate(d).unwrap()),
        ];
        for (name, w) in windows {
            for k in [2, 3] {
                let c = hpc_brute(&wf_to_hpc(&w, k).unwrap(), k, SEARCH_CEILING).unwrap().colorable;
                if c != has_depth(&w.tree, d) {
                    failures.push(format!("{name} window d = {d}, k = {k}: colorable {c}"));
                }
            }
        }
    }
    verdict(7, "coloring gadget on finite trees and windows", 20, start, &failures);
}

#[test]
fn criterion_8_parallelization() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let family: Vec<TreeWithLeaves> = (0..7)
        .map(|i| TreeWithLeaves::exact(corpus_tree(SEED ^ 0xc2, i, 12, 5)))
        .chain([
            full_generator(2, 3).truncate(3).unwrap(),
            path_generator(4).truncate(4).unwrap(),
            comb_generator(2).truncate(2).unwrap(),
        ])
        .collect();
    assert_eq!(family.len(), 10);
    for d in 0..=6 {
        let par = hat(|w: &TreeWithLeaves| w.tree.wf_probe(d), &family).unwrap();
        let seq: Vec<bool> = family.iter().map(|w| w.tree.wf_probe(d).unwrap()).collect();
        if par != seq {
            failures.push(format!("d = {d}: parallel WF probes differ"));
        }
    }
    let graphs: Vec<Hypergraph> = family.iter().map(|w| wf_to_hpc(w, 2).unwrap()).collect();
    let par = hat(|h: &Hypergraph| Ok(hpc_brute(h, 2, SEARCH_CEILING)?.bit()), &graphs).unwrap();
    let seq: Vec<u8> = graphs.iter().map(|h| hpc_brute(h, 2, SEARCH_CEILING).unwrap().bit()).collect();
    if par != seq {
        failures.push("parallel coloring answers differ".to_string());
    }
    verdict(8, "parallelized WF probe and coloring search", 2, start, &failures);
}

#[test]
fn criterion_9_verify_all() {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_treelab")).args(["verify", "all"]).output().unwrap();
    print!("{}", String::from_utf8_lossy(&out.stdout));
    let failures = if out.status.success() {
        vec![]
    } else {
        vec![format!("exit status {:?}", out.status.code())]
    };
    verdict(9, "treelab verify all", 60, start, &failures);
}
