#![allow(dead_code)]

//! Shared test support: a brute-force betweenness oracle that enumerates
//! every shortest path explicitly, one at a time.
//!
//! The oracle deliberately avoids the library's path-counting and
//! dependency-accumulation code. It recomputes distances with its own
//! plain BFS and then walks every shortest path over the distance-derived
//! DAG, tallying interior nodes per path. Exponential in the worst case,
//! fine for the small graphs it is used on.

use std::collections::VecDeque;

use bolt_core::graph::{Graph, NodeId};

/// Plain BFS distances; -1 marks unreachable nodes.
fn oracle_distances(adj: &[Vec<usize>], s: usize) -> Vec<i64> {
    let mut dist = vec![-1i64; adj.len()];
    let mut queue = VecDeque::new();
    dist[s] = 0;
    queue.push_back(s);
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if dist[w] < 0 {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

fn adjacency_of(g: &Graph) -> Vec<Vec<usize>> {
    g.nodes()
        .map(|v| g.neighbors(v).iter().map(|&w| w as usize).collect())
        .collect()
}

/// Walk every shortest `s -> t` path, bumping `counts[v]` for each
/// interior node of each path. Returns the number of paths.
fn enumerate_paths(
    adj: &[Vec<usize>],
    dist_s: &[i64],
    dist_t: &[i64],
    s: usize,
    t: usize,
    counts: &mut [u64],
) -> u64 {
    fn walk(
        adj: &[Vec<usize>],
        dist_s: &[i64],
        dist_t: &[i64],
        target_dist: i64,
        u: usize,
        t: usize,
        path: &mut Vec<usize>,
        counts: &mut [u64],
    ) -> u64 {
        if u == t {
            for &v in path.iter().skip(1) {
                counts[v] += 1;
            }
            return 1;
        }
        let mut found = 0;
        for &w in &adj[u] {
            // Stay on the shortest-path DAG and only where t remains
            // reachable within budget.
            if dist_s[w] == dist_s[u] + 1
                && dist_t[w] >= 0
                && dist_s[w] + dist_t[w] == target_dist
            {
                path.push(w);
                found += walk(adj, dist_s, dist_t, target_dist, w, t, path, counts);
                path.pop();
            }
        }
        found
    }

    let mut path = vec![s];
    // Interior nodes only: drop the endpoints from the tally.
    let mut raw = vec![0u64; adj.len()];
    let total = walk(
        adj,
        dist_s,
        dist_t,
        dist_s[t],
        s,
        t,
        &mut path,
        &mut raw,
    );
    raw[t] = 0;
    for (c, r) in counts.iter_mut().zip(raw) {
        *c += r;
    }
    total
}

/// Betweenness of every node by full path enumeration over all ordered
/// pairs. No halving: the middle of a 3-path scores 2.
pub fn brute_force_betweenness(g: &Graph) -> Vec<f64> {
    let adj = adjacency_of(g);
    let n = adj.len();
    let dist: Vec<Vec<i64>> = (0..n).map(|s| oracle_distances(&adj, s)).collect();
    let mut bc = vec![0.0f64; n];
    for s in 0..n {
        for t in 0..n {
            if t == s || dist[s][t] < 0 {
                continue;
            }
            let mut counts = vec![0u64; n];
            let total = enumerate_paths(&adj, &dist[s], &dist[t], s, t, &mut counts);
            assert!(total > 0, "reachable pair without a path");
            for v in 0..n {
                if v != s && counts[v] > 0 {
                    bc[v] += counts[v] as f64 / total as f64;
                }
            }
        }
    }
    bc
}

/// Dependency of one source on every node, by the same enumeration:
/// `delta[v] = sum over targets t of (paths s->t through v) / (paths s->t)`.
pub fn brute_force_dependency(g: &Graph, s: NodeId) -> Vec<f64> {
    let adj = adjacency_of(g);
    let n = adj.len();
    let s = s as usize;
    let dist_s = oracle_distances(&adj, s);
    let mut delta = vec![0.0f64; n];
    for t in 0..n {
        if t == s || dist_s[t] < 0 {
            continue;
        }
        let dist_t = oracle_distances(&adj, t);
        let mut counts = vec![0u64; n];
        let total = enumerate_paths(&adj, &dist_s, &dist_t, s, t, &mut counts);
        for v in 0..n {
            if v != s && counts[v] > 0 {
                delta[v] += counts[v] as f64 / total as f64;
            }
        }
    }
    delta[s] = 0.0;
    delta
}
