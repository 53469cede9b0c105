//! Breadth-first shortest paths and Brandes dependency accumulation.
//!
//! Betweenness here is the ordered-pair form: every ordered pair `(s, t)`
//! with `s != v != t` contributes `sigma_st(v) / sigma_st`, and nothing is
//! halved afterwards. On the path `a - b - c` the middle node scores 2.
//!
//! The all-source routines fan out over fixed 256-source chunks and merge
//! the per-chunk partial sums in chunk order, so results are bitwise
//! reproducible no matter how many worker threads run.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::graph::{Graph, NodeId};

/// Sources per parallel work unit. Fixed so the floating point merge order
/// never depends on the thread count.
const SOURCE_CHUNK: usize = 256;

/// Single-source BFS with shortest-path counts.
///
/// `dist` uses `None` for unreachable nodes. `sigma[w]` counts shortest
/// `source -> w` paths as a float, matching the accumulation arithmetic.
/// Predecessor lists are stored flat: `preds(w)` are the neighbors of `w`
/// one level closer to the source.
#[derive(Debug, Clone)]
pub struct BfsResult {
    pub source: NodeId,
    dist: Vec<Option<u32>>,
    pub sigma: Vec<f64>,
    /// Visit order; distances are nondecreasing along it.
    pub order: Vec<NodeId>,
    pred_offsets: Vec<u32>,
    pred_list: Vec<NodeId>,
}

impl BfsResult {
    pub fn distance(&self, v: NodeId) -> Option<u32> {
        self.dist[v as usize]
    }

    pub fn distances(&self) -> &[Option<u32>] {
        &self.dist
    }

    pub fn preds(&self, v: NodeId) -> &[NodeId] {
        let v = v as usize;
        &self.pred_list[self.pred_offsets[v] as usize..self.pred_offsets[v + 1] as usize]
    }

    /// Nodes reached from the source, including the source itself.
    pub fn reached(&self) -> usize {
        self.order.len()
    }
}

pub fn bfs(g: &Graph, source: NodeId) -> BfsResult {
    let n = g.node_count();
    let mut dist: Vec<Option<u32>> = vec![None; n];
    let mut sigma = vec![0.0f64; n];
    let mut order = Vec::new();
    let mut queue = VecDeque::new();

    dist[source as usize] = Some(0);
    sigma[source as usize] = 1.0;
    queue.push_back(source);

    while let Some(v) = queue.pop_front() {
        order.push(v);
        let dv = dist[v as usize].unwrap();
        for &w in g.neighbors(v) {
            match dist[w as usize] {
                None => {
                    dist[w as usize] = Some(dv + 1);
                    sigma[w as usize] += sigma[v as usize];
                    queue.push_back(w);
                }
                Some(dw) if dw == dv + 1 => {
                    sigma[w as usize] += sigma[v as usize];
                }
                _ => {}
            }
        }
    }

    // Predecessors, flat: count, prefix-sum, fill.
    let mut pred_offsets = vec![0u32; n + 1];
    for &w in &order {
        let dw = dist[w as usize].unwrap();
        if dw == 0 {
            continue;
        }
        let count = g
            .neighbors(w)
            .iter()
            .filter(|&&v| dist[v as usize] == Some(dw - 1))
            .count();
        pred_offsets[w as usize + 1] = count as u32;
    }
    for i in 0..n {
        pred_offsets[i + 1] += pred_offsets[i];
    }
    let mut pred_list = vec![0 as NodeId; pred_offsets[n] as usize];
    let mut cursor: Vec<u32> = pred_offsets[..n].to_vec();
    for &w in &order {
        let dw = dist[w as usize].unwrap();
        if dw == 0 {
            continue;
        }
        for &v in g.neighbors(w) {
            if dist[v as usize] == Some(dw - 1) {
                pred_list[cursor[w as usize] as usize] = v;
                cursor[w as usize] += 1;
            }
        }
    }

    BfsResult {
        source,
        dist,
        sigma,
        order,
        pred_offsets,
        pred_list,
    }
}

/// Dependency of one source on every node.
#[derive(Debug, Clone)]
pub struct DependencyVector {
    pub source: NodeId,
    /// `delta[v]` is the summed pair dependency of the source on `v`;
    /// the source's own entry is 0 by definition.
    pub delta: Vec<f64>,
}

/// Accumulate `delta_{s.}(v)` for all `v` by walking the BFS order
/// backwards: `delta[v] += sigma_v / sigma_w * (1 + delta[w])` for every
/// predecessor `v` of `w`.
pub fn dependencies(bfs: &BfsResult) -> DependencyVector {
    let n = bfs.sigma.len();
    let mut delta = vec![0.0f64; n];
    for &w in bfs.order.iter().rev() {
        let coeff = (1.0 + delta[w as usize]) / bfs.sigma[w as usize];
        for &v in bfs.preds(w) {
            delta[v as usize] += bfs.sigma[v as usize] * coeff;
        }
    }
    delta[bfs.source as usize] = 0.0;
    DependencyVector {
        source: bfs.source,
        delta,
    }
}

fn add_source_into(g: &Graph, source: NodeId, acc: &mut [f64]) {
    let dep = dependencies(&bfs(g, source));
    for (a, d) in acc.iter_mut().zip(dep.delta) {
        *a += d;
    }
}

/// Exact betweenness of every node: one Brandes pass per source.
pub fn exact_betweenness(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let chunks: Vec<Vec<f64>> = (0..n)
        .collect::<Vec<_>>()
        .par_chunks(SOURCE_CHUNK)
        .map(|sources| {
            let mut acc = vec![0.0f64; n];
            for &s in sources {
                add_source_into(g, s as NodeId, &mut acc);
            }
            acc
        })
        .collect();

    let mut total = vec![0.0f64; n];
    for chunk in chunks {
        for (t, c) in total.iter_mut().zip(chunk) {
            *t += c;
        }
    }
    total
}

/// Dependency of every source on one fixed node `v`: entry `s` holds
/// `delta_{s.}(v)`. Summation follows the same chunk layout as
/// [`exact_betweenness`], so the sum reproduces its `v` entry bit for bit.
pub fn dependency_on(g: &Graph, v: NodeId) -> Vec<f64> {
    let n = g.node_count();
    let per_source: Vec<Vec<f64>> = (0..n)
        .collect::<Vec<_>>()
        .par_chunks(SOURCE_CHUNK)
        .map(|sources| {
            sources
                .iter()
                .map(|&s| dependencies(&bfs(g, s as NodeId)).delta[v as usize])
                .collect()
        })
        .collect();
    per_source.into_iter().flatten().collect()
}

/// Exact betweenness of a single node via a full pass over all sources.
pub fn exact_betweenness_single(g: &Graph, v: NodeId) -> f64 {
    let deps = dependency_on(g, v);
    let mut total = 0.0;
    for chunk in deps.chunks(SOURCE_CHUNK) {
        let mut part = 0.0;
        for d in chunk {
            part += d;
        }
        total += part;
    }
    total
}
