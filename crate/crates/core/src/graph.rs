//! Undirected graph storage and edge list ingestion.
//!
//! Input is a SNAP-style edge list: one `u v` pair per line, `#` comments,
//! arbitrary string labels. Building a [`Graph`] symmetrizes the edges,
//! drops self loops, collapses duplicates and removes nodes left without
//! any edge. Surviving nodes get dense indices in `[0, n)` assigned by
//! first appearance, and every adjacency list is sorted, so the same edge
//! list always builds the same graph.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};

/// Dense node index, valid in `[0, n)` for the graph that issued it.
pub type NodeId = u32;

/// Parsed edge list, order preserved, labels untouched.
#[derive(Debug, Clone, Default)]
pub struct EdgeList {
    pub edges: Vec<(String, String)>,
}

impl EdgeList {
    pub fn new(edges: Vec<(String, String)>) -> Self {
        EdgeList { edges }
    }

    /// Convenience for numeric edge pairs, used by the generators.
    pub fn from_pairs(pairs: &[(u64, u64)]) -> Self {
        EdgeList {
            edges: pairs
                .iter()
                .map(|&(a, b)| (a.to_string(), b.to_string()))
                .collect(),
        }
    }
}

/// Parse SNAP-style edge list text.
///
/// Empty lines and lines starting with `#` are skipped. Every other line
/// must hold exactly two whitespace-separated tokens; anything else is a
/// parse error carrying the 1-based line number.
pub fn parse_edge_list(text: &str) -> Result<EdgeList> {
    let mut edges = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let a = tokens.next();
        let b = tokens.next();
        let extra = tokens.next();
        match (a, b, extra) {
            (Some(a), Some(b), None) => edges.push((a.to_string(), b.to_string())),
            _ => {
                return Err(Error::Parse {
                    line: i + 1,
                    reason: format!("expected two tokens, got {:?}", line),
                })
            }
        }
    }
    Ok(EdgeList { edges })
}

/// Compressed sparse row adjacency over dense node indices.
///
/// `offsets` has `n + 1` entries; the neighbors of node `v` live in
/// `adjacency[offsets[v]..offsets[v + 1]]`, sorted ascending. Each
/// undirected edge appears in both endpoint lists, so
/// `adjacency.len() == 2 * m`.
#[derive(Debug, Clone)]
pub struct Graph {
    offsets: Vec<usize>,
    adjacency: Vec<NodeId>,
    labels: Vec<String>,
    index: HashMap<String, NodeId>,
}

/// Build a [`Graph`] from a raw edge list.
///
/// Self loops are dropped, duplicate edges (in either orientation) are
/// collapsed, and nodes that end up with no edges are removed. Fails with
/// [`Error::EmptyGraph`] when nothing survives.
pub fn build_graph(list: &EdgeList) -> Result<Graph> {
    let mut index: HashMap<String, NodeId> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut seen: HashSet<(NodeId, NodeId)> = HashSet::new();
    let mut pairs: Vec<(NodeId, NodeId)> = Vec::new();

    for (a, b) in &list.edges {
        if a == b {
            continue;
        }
        let mut id_of = |label: &String| -> NodeId {
            if let Some(&i) = index.get(label) {
                return i;
            }
            let i = labels.len() as NodeId;
            labels.push(label.clone());
            index.insert(label.clone(), i);
            i
        };
        let u = id_of(a);
        let v = id_of(b);
        let key = (u.min(v), u.max(v));
        if seen.insert(key) {
            pairs.push(key);
        }
    }

    if pairs.is_empty() {
        return Err(Error::EmptyGraph);
    }

    let n = labels.len();
    let mut degree = vec![0usize; n];
    for &(u, v) in &pairs {
        degree[u as usize] += 1;
        degree[v as usize] += 1;
    }

    let mut offsets = vec![0usize; n + 1];
    for v in 0..n {
        offsets[v + 1] = offsets[v] + degree[v];
    }

    let mut adjacency = vec![0 as NodeId; offsets[n]];
    let mut cursor = offsets.clone();
    for &(u, v) in &pairs {
        adjacency[cursor[u as usize]] = v;
        cursor[u as usize] += 1;
        adjacency[cursor[v as usize]] = u;
        cursor[v as usize] += 1;
    }
    for v in 0..n {
        adjacency[offsets[v]..offsets[v + 1]].sort_unstable();
    }

    Ok(Graph {
        offsets,
        adjacency,
        labels,
        index,
    })
}

impl Graph {
    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.len() / 2
    }

    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        let v = v as usize;
        &self.adjacency[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.neighbors(v).len()
    }

    /// Average degree `2m / n`.
    pub fn average_degree(&self) -> f64 {
        self.adjacency.len() as f64 / self.node_count() as f64
    }

    pub fn label(&self, v: NodeId) -> &str {
        &self.labels[v as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<NodeId> {
        self.index.get(label).copied()
    }

    /// Resolve a label or fail with [`Error::UnknownNode`].
    pub fn require(&self, label: &str) -> Result<NodeId> {
        self.index_of(label)
            .ok_or_else(|| Error::UnknownNode(label.to_string()))
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.node_count() as NodeId).into_iter()
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> Vec<(NodeId, NodeId)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in self.nodes() {
            for &v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }
}
