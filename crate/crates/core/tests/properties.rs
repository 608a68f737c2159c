use std::collections::BTreeSet;

use proptest::prelude::*;

use treelab::harness::oracle::splitting_levels;
use treelab::hypercolor::{hpc_brute, hpc_enumerate, Hypergraph, SEARCH_CEILING};
use treelab::reductions::hat;
use treelab::seqcode::{decode, encode, interleave, is_prefix, shift_down, shift_up, FinSeq, SeqCode};
use treelab::transforms::{leaf_deleted, star_invert, star_leaves, t_minus, t_plus, t_star};
use treelab::trees::{bleaf, leaf_brute, BoundingFunction, ExplicitTree, TreeQuery};

fn seq(max_len: usize, max_entry: u64) -> impl Strategy<Value = FinSeq> {
    prop::collection::vec(0..=max_entry, 0..=max_len).prop_map(FinSeq::new)
}

fn tree() -> impl Strategy<Value = ExplicitTree> {
    prop::collection::vec(seq(6, 3), 0..24).prop_map(ExplicitTree::closure_of)
}

fn hypergraph() -> impl Strategy<Value = (Hypergraph, u32)> {
    (0usize..=6, 2u32..=3).prop_flat_map(|(n, k)| {
        let edge = prop::collection::btree_set(0..n.max(1), 0..=n.min(4));
        prop::collection::vec(edge, 0..6).prop_map(move |edges| {
            let edges = if n == 0 { vec![] } else { edges.into_iter().map(|e| e.into_iter().collect()).collect() };
            (Hypergraph::new(n, edges).unwrap(), k)
        })
    })
}

#[test]
fn codes_roundtrip_on_the_first_ten_thousand() {
    for n in 0..10_000u64 {
        assert_eq!(encode(&decode(SeqCode(n))).unwrap(), SeqCode(n));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn codes_roundtrip_on_random_sequences(s in prop_oneof![seq(3, 40), seq(5, 3)]) {
        let c = encode(&s).unwrap();
        prop_assert_eq!(decode(c), s);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn shifts_are_inverse(s in seq(8, 1000)) {
        prop_assert_eq!(shift_down(&shift_up(&s)), s.clone());
        if s.entries().iter().all(|&x| x > 0) {
            prop_assert_eq!(shift_up(&shift_down(&s)), s);
        }
    }

    #[test]
    fn interleave_splits_back((a, b) in (0usize..8).prop_flat_map(|n| {
        (prop::collection::vec(any::<u64>(), n), prop::collection::vec(any::<u64>(), n))
    })) {
        let (a, b) = (FinSeq::new(a), FinSeq::new(b));
        let w = interleave(&a, &b).unwrap();
        prop_assert_eq!(w.len(), 2 * a.len());
        let even: Vec<u64> = w.entries().iter().step_by(2).copied().collect();
        let odd: Vec<u64> = w.entries().iter().skip(1).step_by(2).copied().collect();
        prop_assert_eq!(&even, a.entries());
        prop_assert_eq!(&odd, b.entries());
    }

    #[test]
    fn prefix_is_a_partial_order(a in seq(4, 1), b in seq(4, 1), c in seq(4, 1)) {
        prop_assert!(is_prefix(&a, &a));
        if is_prefix(&a, &b) && is_prefix(&b, &a) {
            prop_assert_eq!(&a, &b);
        }
        if is_prefix(&a, &b) && is_prefix(&b, &c) {
            prop_assert!(is_prefix(&a, &c));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn bleaf_matches_the_leaf_oracle(t in tree(), slack in 0u64..3) {
        let tight = BoundingFunction::tightest(&t);
        let brute = leaf_brute(&t);
        prop_assert_eq!(&bleaf(&t, &tight).unwrap(), &brute);
        let loose = BoundingFunction::from_fn(move |i| tight.at(i) + slack);
        prop_assert_eq!(&bleaf(&t, &loose).unwrap(), &brute);
        prop_assert_eq!(t.leaves(), brute);
    }

    #[test]
    fn probes_are_monotone(t in tree()) {
        for d in 0..7 {
            let k = t.kernel_probe(d).unwrap();
            prop_assert!(t.kernel_probe(d + 1).unwrap().is_subset(&k));
            if t.wf_probe(d).unwrap() {
                prop_assert!(t.wf_probe(d + 1).unwrap());
            }
            for s in &k {
                for p in s.proper_prefixes() {
                    prop_assert!(t.has_d_splitting(&p, d).unwrap());
                }
            }
        }
    }

    #[test]
    fn kernel_probe_matches_the_splitting_oracle(t in tree()) {
        let levels = splitting_levels(&t, 4);
        for (d, level) in levels.iter().enumerate() {
            prop_assert_eq!(&t.kernel_probe(d).unwrap(), level);
        }
    }

    #[test]
    fn star_transform_laws(t in tree()) {
        let star = t_star(&t);
        prop_assert_eq!(star.star.len(), 2 * t.len());
        prop_assert_eq!(star_leaves(&star), leaf_brute(&star.star));
        prop_assert_eq!(&star_invert(&star.star).unwrap(), &t);
        prop_assert_eq!(leaf_deleted(&star), t_plus(&t));
        prop_assert_eq!(&t_minus(&t_plus(&t)), &t);
        for d in 0..8 {
            let up: BTreeSet<FinSeq> = t.nodes_at_depth(d).unwrap().iter().map(shift_up).collect();
            prop_assert_eq!(t_plus(&t).nodes_at_depth(d).unwrap(), up);
        }
    }

    #[test]
    fn both_coloring_searches_agree((h, k) in hypergraph()) {
        let a = hpc_brute(&h, k, SEARCH_CEILING).unwrap();
        let b = hpc_enumerate(&h, k, SEARCH_CEILING).unwrap();
        prop_assert_eq!(a.colorable, b.colorable);
        prop_assert_eq!(a.witness, b.witness);
    }

    #[test]
    fn hat_preserves_order(ts in prop::collection::vec(tree(), 0..10), d in 0usize..6) {
        let par = hat(|t: &ExplicitTree| t.wf_probe(d), &ts).unwrap();
        let seq: Vec<bool> = ts.iter().map(|t| t.wf_probe(d).unwrap()).collect();
        prop_assert_eq!(par, seq);
    }
}
