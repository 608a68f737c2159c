use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use treelab::harness::{self, generate, read_json, write_json, GeneratorName, GeneratorSpec, Generated, Suite, SuiteConfig};
use treelab::hypercolor::{calibrated_depth, hpc_brute, hpc_enumerate, hpc_to_wf_tree, wf_to_hpc, Hypergraph, SEARCH_CEILING};
use treelab::reductions::{
    injection_to_lpo, kernel_from_wf, lpo_window, pk_to_wf, tree_to_lpo, wf_answers, wf_to_pk, LpoInstance, TupleTree,
};
use treelab::seqcode::FinSeq;
use treelab::transforms::{star_invert, star_leaves, t_minus, t_plus, t_star};
use treelab::trees::{bleaf, check_tree, leaf_brute, BoundingFunction, ExplicitTree, TreeWithLeaves, DEFAULT_NODE_CAP};
use treelab::Error;

#[derive(Parser)]
#[command(name = "treelab", version, about = "Trees over finite sequences, reduction gadgets and their verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply T-, T+, T* or the star inverse to a tree.
    Transform {
        #[arg(long, value_enum)]
        op: TransformOp,
        #[arg(long = "in", default_value = "-")]
        input: PathBuf,
        #[arg(long = "out", default_value = "-")]
        output: PathBuf,
        /// Take the prefix closure of the input instead of rejecting it.
        #[arg(long)]
        close: bool,
    },
    /// Leaf set of a tree.
    Leaves {
        #[arg(long = "in", default_value = "-")]
        input: PathBuf,
        /// Bounding function as comma-separated values; the last repeats.
        #[arg(long, value_delimiter = ',', conflicts_with = "brute")]
        bleaf: Option<Vec<u64>>,
        /// Compare every pair of nodes.
        #[arg(long)]
        brute: bool,
    },
    /// Build a reduction gadget.
    Gadget {
        #[arg(value_enum)]
        kind: GadgetKind,
        #[arg(long = "in", default_value = "-")]
        input: PathBuf,
        #[arg(long = "out", default_value = "-")]
        output: PathBuf,
        /// Palette size for the coloring gadgets.
        #[arg(long, default_value_t = 2)]
        k: u32,
        /// Splitting depth for pk2wf.
        #[arg(long, default_value_t = 1)]
        depth: usize,
        /// Row count for inj2lpo.
        #[arg(long)]
        rows: Option<usize>,
    },
    /// Decide proper k-colorability of a hypergraph.
    Color {
        #[arg(long)]
        k: u32,
        #[arg(long = "in", default_value = "-")]
        input: PathBuf,
        /// Enumerate all k^N assignments instead of backtracking.
        #[arg(long)]
        enumerate: bool,
        #[arg(long, default_value_t = SEARCH_CEILING)]
        ceiling: u64,
    },
    /// Produce a tree or LPO instance from a named generator.
    Generate {
        name: GeneratorName,
        #[arg(long, default_value_t = 2)]
        k: u64,
        #[arg(long, default_value_t = 3)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 16)]
        nodes: usize,
        #[arg(long, default_value_t = DEFAULT_NODE_CAP)]
        budget: usize,
        #[arg(long = "out", default_value = "-")]
        output: PathBuf,
    },
    /// Run a verification suite: transforms, b2, lpo, b7-forward,
    /// b7-backward, c1-forward, c1-backward, hat, or all.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Multiplier on the default case counts.
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
        #[arg(long)]
        json: bool,
        /// Directory for counterexample files.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TransformOp {
    Minus,
    Plus,
    Star,
    StarInvert,
}

#[derive(Clone, Copy, ValueEnum)]
enum GadgetKind {
    /// LPO rows to the window of their tree.
    Lpo2tree,
    /// Tree to LPO rows, one per node.
    Tree2lpo,
    /// Injection (array of values) to LPO rows.
    Inj2lpo,
    /// Array of trees to one interleaving tree.
    Wf2pk,
    /// Tree to its tuple trees, probed at depth + 1.
    Pk2wf,
    /// Hypergraph to the window of its coloring tree.
    Hpc2wf,
    /// Tree (with leaves) to a hypergraph.
    Wf2hpc,
}

enum Failure {
    Verification,
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Lib(e)) => {
            eprintln!("treelab: {e}");
            match e {
                Error::Resource(_) => ExitCode::from(3),
                Error::Element { ref source, .. } if matches!(**source, Error::Resource(_)) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

/// A bare node array is a tree; an object is a tree with leaves.
fn read_tree_input(path: &Path, close: bool) -> Result<TreeWithLeaves, Error> {
    let value: Value = read_json(path)?;
    if value.is_array() {
        let nodes: Vec<FinSeq> = serde_json::from_value(value)?;
        let tree = if close { ExplicitTree::closure_of(nodes) } else { check_tree(nodes.into_iter().collect())? };
        Ok(TreeWithLeaves::exact(tree))
    } else {
        Ok(serde_json::from_value(value)?)
    }
}

fn read_tree(path: &Path, close: bool) -> Result<ExplicitTree, Error> {
    Ok(read_tree_input(path, close)?.tree)
}

fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Transform { op, input, output, close } => {
            let tree = read_tree(&input, close)?;
            match op {
                TransformOp::Minus => write_json(&output, &t_minus(&tree))?,
                TransformOp::Plus => write_json(&output, &t_plus(&tree))?,
                TransformOp::Star => {
                    let star = t_star(&tree);
                    let leaves = star_leaves(&star);
                    let tl = TreeWithLeaves::new(star.star, leaves, BTreeSet::new())?;
                    write_json(&output, &tl)?
                }
                TransformOp::StarInvert => write_json(&output, &star_invert(&tree)?)?,
            }
        }
        Command::Leaves { input, bleaf: bound, brute } => {
            let tree = read_tree(&input, false)?;
            let leaves = match (bound, brute) {
                (Some(b), _) => bleaf(&tree, &BoundingFunction::from_vec(b)?)?,
                (None, true) => leaf_brute(&tree),
                (None, false) => tree.leaves(),
            };
            write_json(Path::new("-"), &leaves)?;
        }
        Command::Gadget { kind, input, output, k, depth, rows } => gadget(kind, &input, &output, k, depth, rows)?,
        Command::Color { k, input, enumerate, ceiling } => {
            let h: Hypergraph = read_json(&input)?;
            let out = if enumerate { hpc_enumerate(&h, k, ceiling)? } else { hpc_brute(&h, k, ceiling)? };
            write_json(Path::new("-"), &out)?;
        }
        Command::Generate { name, k, d, seed, nodes, budget, output } => {
            let spec = GeneratorSpec { name, k, d, seed, nodes, budget };
            match generate(&spec)? {
                Generated::Tree(t) => write_json(&output, &t)?,
                Generated::Lpo(inst) => write_json(&output, &inst)?,
            }
        }
        Command::Verify { suite, seed, scale, json, emit } => {
            let suites = Suite::parse_list(&suite)?;
            if !(scale > 0.0 && scale.is_finite()) {
                return Err(Error::Rejected(format!("scale must be positive, got {scale}")).into());
            }
            let cfg = SuiteConfig { seed, scale };
            let mut all_ok = true;
            let mut reports = Vec::new();
            for s in suites {
                let report = harness::run_suite(s, &cfg)?;
                all_ok &= report.ok();
                if let Some(dir) = &emit {
                    if let Some(path) = report.emit(dir)? {
                        eprintln!("counterexample written to {}", path.display());
                    }
                }
                if !json {
                    println!("{report}");
                }
                reports.push(report);
            }
            if json {
                write_json(Path::new("-"), &reports)?;
            }
            if !all_ok {
                return Err(Failure::Verification);
            }
        }
    }
    Ok(())
}

fn gadget(kind: GadgetKind, input: &Path, output: &Path, k: u32, depth: usize, rows: Option<usize>) -> Result<(), Error> {
    match kind {
        GadgetKind::Lpo2tree => {
            let inst: LpoInstance = read_json(input)?;
            write_json(output, &lpo_window(&inst)?)
        }
        GadgetKind::Tree2lpo => {
            let tree = read_tree(input, false)?;
            let (inst, order) = tree_to_lpo(&tree);
            write_json(output, &json!({ "rows": inst, "budget": inst.budget(), "order": order }))
        }
        GadgetKind::Inj2lpo => {
            let f: Vec<u64> = read_json(input)?;
            let rows = rows.unwrap_or_else(|| f.iter().max().map_or(0, |&m| m as usize + 1));
            write_json(output, &injection_to_lpo(&f, rows)?)
        }
        GadgetKind::Wf2pk => {
            let family: Vec<ExplicitTree> = read_json(input)?;
            write_json(output, &wf_to_pk(&family))
        }
        GadgetKind::Pk2wf => {
            let tree = read_tree(input, false)?;
            let tts = pk_to_wf(&tree);
            let mut members = Vec::new();
            for tt in &tts {
                let nodes = tt.nodes_at_depth(depth + 1, DEFAULT_NODE_CAP)?;
                let codes: Vec<Vec<String>> = nodes
                    .iter()
                    .map(|n| TupleTree::node_codes(n).iter().map(|c| c.to_string()).collect())
                    .collect();
                members.push(json!({ "root": tt.root(), "well_founded": codes.is_empty(), "nodes": codes }));
            }
            let kernel = kernel_from_wf(&tree, &wf_answers(&tts, depth))?;
            write_json(output, &json!({ "depth": depth + 1, "trees": members, "kernel": kernel }))
        }
        GadgetKind::Hpc2wf => {
            let h: Hypergraph = read_json(input)?;
            let d = calibrated_depth(&h);
            let window = hpc_to_wf_tree(&h, k)?.truncate(d)?;
            write_json(output, &json!({ "depth": d, "window": window }))
        }
        GadgetKind::Wf2hpc => {
            let tl = read_tree_input(input, false)?;
            write_json(output, &wf_to_hpc(&tl, k)?)
        }
    }
}
