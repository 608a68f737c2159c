//! Reduction gadgets: leaf sets and parallel LPO, the injection-range
//! instance, parallel well-foundedness against perfect kernels, and the
//! parallelization combinator.

mod hat;
mod lpo;
mod pk;

pub use hat::hat;
pub use lpo::{
    injection_to_lpo, leaves_from_lpo, lpo_from_leafset, lpo_marker, lpo_to_tree, lpo_window, solve_lpo,
    tree_to_lpo, LpoAnswer, LpoInstance,
};
pub use pk::{
    gadget_node, kernel_from_wf, pk_to_wf, wf_answers, wf_from_kernel, wf_to_pk, wf_to_pk_generated, PairTable,
    TupleNode, TupleTree,
};
