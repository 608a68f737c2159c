use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on search nodes for [`hpc_brute`] and on assignments for
/// [`hpc_enumerate`].
pub const SEARCH_CEILING: u64 = 1 << 20;

/// Vertices `0..vertex_count` and edges of any cardinality. Edges are stored
/// sorted and without repeated vertices; empty and singleton edges are legal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "HypergraphRepr", into = "HypergraphRepr")]
pub struct Hypergraph {
    vertex_count: usize,
    edges: Vec<Vec<usize>>,
    anchors: BTreeMap<String, usize>,
}

#[derive(Serialize, Deserialize)]
struct HypergraphRepr {
    vertices: usize,
    edges: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    anchors: BTreeMap<String, usize>,
}

impl TryFrom<HypergraphRepr> for Hypergraph {
    type Error = Error;

    fn try_from(r: HypergraphRepr) -> Result<Self> {
        let mut h = Hypergraph::new(r.vertices, r.edges)?;
        for (name, v) in r.anchors {
            h.name_vertex(name, v)?;
        }
        Ok(h)
    }
}

impl From<Hypergraph> for HypergraphRepr {
    fn from(h: Hypergraph) -> Self {
        HypergraphRepr { vertices: h.vertex_count, edges: h.edges, anchors: h.anchors }
    }
}

impl Hypergraph {
    pub fn new(vertex_count: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let mut h = Hypergraph { vertex_count, edges: Vec::with_capacity(edges.len()), anchors: BTreeMap::new() };
        for e in edges {
            h.add_edge(e)?;
        }
        Ok(h)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn anchors(&self) -> &BTreeMap<String, usize> {
        &self.anchors
    }

    pub fn add_vertex(&mut self) -> usize {
        self.vertex_count += 1;
        self.vertex_count - 1
    }

    pub fn add_edge(&mut self, mut edge: Vec<usize>) -> Result<()> {
        if let Some(&v) = edge.iter().find(|&&v| v >= self.vertex_count) {
            return Err(Error::rejected(format!(
                "edge references vertex {v} but there are only {} vertices",
                self.vertex_count
            )));
        }
        edge.sort_unstable();
        edge.dedup();
        self.edges.push(edge);
        Ok(())
    }

    pub fn name_vertex(&mut self, name: impl Into<String>, v: usize) -> Result<()> {
        if v >= self.vertex_count {
            return Err(Error::rejected(format!("anchor refers to missing vertex {v}")));
        }
        self.anchors.insert(name.into(), v);
        Ok(())
    }

    pub fn anchor(&self, name: &str) -> Option<usize> {
        self.anchors.get(name).copied()
    }
}

/// A total map from vertices to colors `0..k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub colors: Vec<u32>,
    pub k: u32,
}

impl Coloring {
    /// Whether every edge whose vertices are all colored has two colors.
    /// Edges reaching past the colored prefix are skipped.
    pub fn proper_on_decided(&self, h: &Hypergraph) -> bool {
        h.edges()
            .iter()
            .filter(|e| e.len() >= 2 && e.iter().all(|&v| v < self.colors.len()))
            .all(|e| !monochromatic(e, &self.colors))
    }
}

fn monochromatic(edge: &[usize], colors: &[u32]) -> bool {
    edge.iter().all(|&v| colors[v] == colors[edge[0]])
}

/// Whether no edge of cardinality at least two is monochromatic.
pub fn is_proper(h: &Hypergraph, f: &Coloring) -> Result<bool> {
    if f.colors.len() != h.vertex_count() {
        return Err(Error::rejected(format!(
            "coloring covers {} of {} vertices",
            f.colors.len(),
            h.vertex_count()
        )));
    }
    if let Some(c) = f.colors.iter().find(|&&c| c >= f.k) {
        return Err(Error::rejected(format!("color {c} outside palette of size {}", f.k)));
    }
    Ok(h.edges().iter().filter(|e| e.len() >= 2).all(|e| !monochromatic(e, &f.colors)))
}

/// Outcome of a coloring search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HpcOutcome {
    pub colorable: bool,
    pub witness: Option<Coloring>,
    /// Search nodes (partial assignments) visited.
    pub explored: u64,
}

impl HpcOutcome {
    pub fn bit(&self) -> u8 {
        u8::from(self.colorable)
    }
}

fn check_palette(k: u32) -> Result<()> {
    if k < 2 {
        Err(Error::rejected(format!("palette size must be at least 2, got {k}")))
    } else {
        Ok(())
    }
}

/// Complete backtracking search for a proper `k`-coloring.
///
/// Vertices are colored in index order, colors tried in increasing order,
/// and a vertex never opens a color more than one above those already used.
/// Every edge is checked as soon as its last vertex is colored. The witness
/// is the lexicographically least proper coloring. Fails with a resource
/// error after visiting `ceiling` search nodes.
pub fn hpc_brute(h: &Hypergraph, k: u32, ceiling: u64) -> Result<HpcOutcome> {
    check_palette(k)?;
    let n = h.vertex_count();
    let mut closing: Vec<Vec<&[usize]>> = vec![Vec::new(); n];
    for e in h.edges().iter().filter(|e| e.len() >= 2) {
        closing[*e.last().expect("nonempty")].push(e);
    }
    let mut colors = vec![0u32; n];
    // used[v] = number of distinct colors among vertices before v.
    let mut used = vec![0u32; n + 1];
    let mut next = vec![0u32; n];
    let mut explored = 0u64;
    let mut v = 0usize;
    loop {
        if v == n {
            return Ok(HpcOutcome {
                colorable: true,
                witness: Some(Coloring { colors, k }),
                explored,
            });
        }
        let limit = k.min(used[v] + 1);
        let mut placed = false;
        while next[v] < limit {
            let c = next[v];
            next[v] += 1;
            explored += 1;
            if explored > ceiling {
                return Err(Error::resource(format!(
                    "coloring search exceeded {ceiling} nodes on {n} vertices"
                )));
            }
            colors[v] = c;
            if closing[v].iter().all(|e| !monochromatic(e, &colors)) {
                placed = true;
                break;
            }
        }
        if placed {
            used[v + 1] = used[v].max(colors[v] + 1);
            v += 1;
            if v < n {
                next[v] = 0;
            }
        } else {
            if v == 0 {
                return Ok(HpcOutcome { colorable: false, witness: None, explored });
            }
            v -= 1;
        }
    }
}

/// Literal enumeration of all `k^N` assignments in lexicographic order.
pub fn hpc_enumerate(h: &Hypergraph, k: u32, ceiling: u64) -> Result<HpcOutcome> {
    check_palette(k)?;
    let n = h.vertex_count();
    let total = (k as u64).checked_pow(n as u32).filter(|&t| t <= ceiling).ok_or_else(|| {
        Error::resource(format!("{k}^{n} assignments exceed the ceiling {ceiling}"))
    })?;
    let mut colors = vec![0u32; n];
    for idx in 0..total {
        let mut x = idx;
        for slot in colors.iter_mut().rev() {
            *slot = (x % k as u64) as u32;
            x /= k as u64;
        }
        let f = Coloring { colors: colors.clone(), k };
        if is_proper(h, &f)? {
            return Ok(HpcOutcome { colorable: true, witness: Some(f), explored: idx + 1 });
        }
    }
    Ok(HpcOutcome { colorable: false, witness: None, explored: total })
}
