//! Random graph generators.
//!
//! Both generators are deterministic in `(parameters, seed)` and hand their
//! edges to [`build_graph`], so callers always see cleaned-up graphs with
//! dense indices. Node labels are the decimal generation indices; ER nodes
//! that end up without any edge are dropped by the build step, so the final
//! node count can be below `n`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{build_graph, EdgeList, Graph};
use crate::rng::seeded_rng;

/// Erdős–Rényi G(n, p): every unordered pair is an edge independently
/// with probability `p`.
///
/// Runs in O(n + m) expected time by skipping over non-edges geometrically
/// instead of flipping a coin per pair.
pub fn generate_er(n: u64, p: f64, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidArgument("er: n must be positive".into()));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!(
            "er: p must lie in [0, 1], got {p}"
        )));
    }

    let mut pairs: Vec<(u64, u64)> = Vec::new();
    if p >= 1.0 {
        for v in 1..n {
            for w in 0..v {
                pairs.push((w, v));
            }
        }
    } else if p > 0.0 {
        let mut rng = seeded_rng(seed);
        let ln_q = (1.0 - p).ln();
        // Walk the pairs (w, v), w < v, in row order, jumping a geometric
        // number of slots between hits.
        let mut v: u64 = 1;
        let mut w: i64 = -1;
        while v < n {
            let r: f64 = rng.gen();
            let skip = ((1.0 - r).ln() / ln_q).floor() as i64;
            w += 1 + skip;
            while v < n && w >= v as i64 {
                w -= v as i64;
                v += 1;
            }
            if v < n {
                pairs.push((w as u64, v));
            }
        }
    }

    build_graph(&EdgeList::from_pairs(&pairs))
}

/// Barabási–Albert H(n, k): start from a complete graph on `k` nodes, then
/// attach each arriving node to `k` distinct existing nodes chosen with
/// probability proportional to their current degree.
///
/// Preferential choice is a uniform draw from an urn holding one entry per
/// edge endpoint; duplicate targets within one arrival are rejected and
/// redrawn. The urn is refreshed once per arrival, after all `k` edges of
/// that arrival are placed. The edge count is exactly
/// `k(k-1)/2 + (n-k)k`.
pub fn generate_ba(n: u64, k: u64, seed: u64) -> Result<Graph> {
    if k == 0 {
        return Err(Error::InvalidArgument("ba: k must be positive".into()));
    }
    if n <= k {
        return Err(Error::InvalidArgument(format!(
            "ba: need n > k, got n={n} k={k}"
        )));
    }

    let mut rng = seeded_rng(seed);
    let mut pairs: Vec<(u64, u64)> = Vec::new();
    let mut urn: Vec<u64> = Vec::new();
    for v in 1..k {
        for w in 0..v {
            pairs.push((w, v));
            urn.push(w);
            urn.push(v);
        }
    }

    let mut targets: Vec<u64> = Vec::with_capacity(k as usize);
    for arrival in k..n {
        targets.clear();
        while (targets.len() as u64) < k {
            let candidate = if urn.is_empty() {
                // Only possible for k = 1 before the first edge exists;
                // all degrees are zero, so the draw is uniform.
                rng.gen_range(0..arrival)
            } else {
                urn[rng.gen_range(0..urn.len())]
            };
            if !targets.contains(&candidate) {
                targets.push(candidate);
            }
        }
        for &t in &targets {
            pairs.push((t, arrival));
            urn.push(t);
            urn.push(arrival);
        }
    }

    build_graph(&EdgeList::from_pairs(&pairs))
}
