//! Single-node betweenness estimation from sampled pivots.
//!
//! One iteration draws a pivot source `i` from the sampling distribution,
//! runs a full dependency accumulation from `i`, and keeps the importance
//! weighted contribution `delta_{i.}(v) / p_i`. The estimate is the mean
//! over `T` iterations; its expectation is the exact betweenness whenever
//! the support covers every source with positive dependency, which all
//! provided models guarantee.
//!
//! Iteration `t` draws from the RNG stream `(seed, t)`, so the sampled
//! pivot multiset depends only on `(seed, T)` and never on thread count
//! or scheduling. Contributions are summed in iteration order.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::rng::indexed_rng;
use crate::sampling::{build_distribution, sample_pivot, ModelKind, SamplingDistribution};
use crate::shortest_paths::{bfs, dependencies};

#[derive(Debug, Clone, serde::Serialize)]
pub struct EstimationResult {
    pub target: NodeId,
    pub estimate: f64,
    /// Iterations actually consumed; 0 when the distribution was the zero
    /// marker and the estimate is exactly 0.
    pub samples: usize,
    pub model: ModelKind,
    pub seed: u64,
}

/// Estimate the betweenness of `v` with `samples` pivot draws.
///
/// The distribution must have been built for `v` on this graph; a zero
/// marker distribution short-circuits to an exact 0 without consuming
/// samples.
pub fn estimate(
    g: &Graph,
    dist: &SamplingDistribution,
    v: NodeId,
    samples: usize,
    seed: u64,
) -> Result<EstimationResult> {
    if dist.target != v {
        return Err(Error::DistributionMismatch(format!(
            "distribution built for node {}, estimating node {v}",
            dist.target
        )));
    }
    if dist.len() != g.node_count() {
        return Err(Error::DistributionMismatch(format!(
            "distribution over {} nodes, graph has {}",
            dist.len(),
            g.node_count()
        )));
    }
    if samples == 0 {
        return Err(Error::InvalidArgument("need at least one sample".into()));
    }
    if dist.is_zero() {
        return Ok(EstimationResult {
            target: v,
            estimate: 0.0,
            samples: 0,
            model: dist.model,
            seed,
        });
    }

    let contributions: Vec<f64> = (0..samples)
        .into_par_iter()
        .map(|t| {
            let mut rng = indexed_rng(seed, t as u64);
            let pivot = sample_pivot(dist, &mut rng).expect("support checked non-empty");
            let dep = dependencies(&bfs(g, pivot));
            dep.delta[v as usize] / dist.probability(pivot)
        })
        .collect();

    let mut sum = 0.0;
    for c in &contributions {
        sum += c;
    }
    Ok(EstimationResult {
        target: v,
        estimate: sum / samples as f64,
        samples,
        model: dist.model,
        seed,
    })
}

/// Build the distribution for `model` and estimate in one call.
pub fn estimate_with_model(
    g: &Graph,
    model: ModelKind,
    v: NodeId,
    samples: usize,
    seed: u64,
) -> Result<EstimationResult> {
    let dist = build_distribution(g, model, v)?;
    estimate(g, &dist, v, samples, seed)
}
