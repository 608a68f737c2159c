//! Trees over finite sequences of naturals: sequence codes, leaf sets,
//! splitting and perfect-kernel probes, the `T⁻ T⁺ T*` transforms, reduction
//! gadgets between leaf sets, parallel LPO, well-foundedness, perfect kernels
//! and hypergraph coloring, and a brute-force verification harness.

pub mod error;
pub mod harness;
pub mod hypercolor;
pub mod reductions;
pub mod seqcode;
pub mod transforms;
pub mod trees;

pub use error::{Error, Result};
pub use seqcode::{FinSeq, SeqCode};
pub use trees::{BoundingFunction, ExplicitTree, GeneratedTree, TreeQuery, TreeWithLeaves};
