//! Hypergraph coloring and the gadgets linking it to trees.

mod gadget;
mod graph;

pub use gadget::{
    calibrated_depth, decode_coloring, decode_pair, hpc_to_wf_tree, pair_code, wf_to_hpc, ANCHORS,
    EMPTY_SET_CODE,
};
pub use graph::{hpc_brute, hpc_enumerate, is_proper, Coloring, HpcOutcome, Hypergraph, SEARCH_CEILING};
