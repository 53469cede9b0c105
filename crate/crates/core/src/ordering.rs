//! Ordering nodes by estimated betweenness.
//!
//! Each queried node gets a fresh exponential-decay distribution and its
//! own estimation stream, derived from the master seed and the node's
//! position in the query. Position `i` always maps to the same stream, so
//! a two-node comparison is exactly the two-element case of the k-way
//! ordering.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::estimator::{estimate, EstimationResult};
use crate::graph::{Graph, NodeId};
use crate::rng::derive_seed;
use crate::sampling::eddbm_model;

/// Outcome of a two-node comparison, in query order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    FirstGreater,
    SecondGreater,
    Tie,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct RankedNode {
    pub node: NodeId,
    pub estimate: f64,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct OrderingResult {
    /// Estimates sorted descending; equal estimates keep query order.
    pub ranking: Vec<RankedNode>,
    /// Present only for two-node queries. A tie means exactly equal
    /// estimates, which for distinct positive scores is essentially a
    /// zero-probability event but happens structurally at betweenness 0.
    pub verdict: Option<Verdict>,
    pub samples: usize,
    pub seed: u64,
}

/// Order two nodes by estimated betweenness.
pub fn betweenness_ordering(
    g: &Graph,
    first: NodeId,
    second: NodeId,
    samples: usize,
    seed: u64,
) -> Result<OrderingResult> {
    k_betweenness_ordering(g, &[first, second], samples, seed)
}

/// Order any number of distinct nodes by estimated betweenness.
///
/// The sort is stable, so nodes with exactly equal estimates appear in
/// query order.
pub fn k_betweenness_ordering(
    g: &Graph,
    nodes: &[NodeId],
    samples: usize,
    seed: u64,
) -> Result<OrderingResult> {
    if nodes.len() < 2 {
        return Err(Error::InvalidArgument(
            "ordering needs at least two nodes".into(),
        ));
    }
    let n = g.node_count() as NodeId;
    for &v in nodes {
        if v >= n {
            return Err(Error::UnknownNode(v.to_string()));
        }
    }
    for (i, &v) in nodes.iter().enumerate() {
        if nodes[i + 1..].contains(&v) {
            return Err(Error::InvalidArgument(format!(
                "node {v} appears more than once"
            )));
        }
    }

    let estimates: Vec<EstimationResult> = nodes
        .par_iter()
        .enumerate()
        .map(|(position, &v)| {
            let node_seed = derive_seed(seed, position as u64);
            let dist = eddbm_model(g, v)?;
            estimate(g, &dist, v, samples, node_seed)
        })
        .collect::<Result<_>>()?;

    let mut ranking: Vec<RankedNode> = estimates
        .iter()
        .map(|r| RankedNode {
            node: r.target,
            estimate: r.estimate,
        })
        .collect();
    ranking.sort_by(|a, b| b.estimate.partial_cmp(&a.estimate).unwrap());

    let verdict = if nodes.len() == 2 {
        let a = estimates[0].estimate;
        let b = estimates[1].estimate;
        Some(if a > b {
            Verdict::FirstGreater
        } else if a < b {
            Verdict::SecondGreater
        } else {
            Verdict::Tie
        })
    } else {
        None
    };

    Ok(OrderingResult {
        ranking,
        verdict,
        samples,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, parse_edge_list, Graph};
    use crate::shortest_paths::exact_betweenness;

    fn graph_from(text: &str) -> Graph {
        build_graph(&parse_edge_list(text).unwrap()).unwrap()
    }

    fn grid3() -> Graph {
        graph_from("0 1\n1 2\n3 4\n4 5\n6 7\n7 8\n0 3\n3 6\n1 4\n4 7\n2 5\n5 8\n")
    }

    #[test]
    fn middle_of_path_beats_endpoint() {
        let g = graph_from("a b\nb c\n");
        let a = g.require("a").unwrap();
        let b = g.require("b").unwrap();
        let r = betweenness_ordering(&g, b, a, 10, 42).unwrap();
        assert_eq!(r.verdict, Some(Verdict::FirstGreater));
        assert_eq!(r.ranking[0].node, b);
        let r = betweenness_ordering(&g, a, b, 10, 42).unwrap();
        assert_eq!(r.verdict, Some(Verdict::SecondGreater));
    }

    #[test]
    fn zero_betweenness_endpoints_tie_exactly() {
        let g = graph_from("a b\nb c\n");
        let a = g.require("a").unwrap();
        let c = g.require("c").unwrap();
        let r = betweenness_ordering(&g, a, c, 25, 1).unwrap();
        assert_eq!(r.verdict, Some(Verdict::Tie));
        // Stable: query order survives among equals.
        assert_eq!(r.ranking[0].node, a);
        assert_eq!(r.ranking[1].node, c);
        let r = betweenness_ordering(&g, c, a, 25, 1).unwrap();
        assert_eq!(r.ranking[0].node, c);
    }

    #[test]
    fn two_node_query_is_the_k_equals_two_case() {
        let g = grid3();
        let u = g.require("4").unwrap();
        let v = g.require("0").unwrap();
        let pair = betweenness_ordering(&g, u, v, 25, 5).unwrap();
        let kway = k_betweenness_ordering(&g, &[u, v], 25, 5).unwrap();
        assert_eq!(pair.ranking[0].node, kway.ranking[0].node);
        assert_eq!(
            pair.ranking[0].estimate.to_bits(),
            kway.ranking[0].estimate.to_bits()
        );
        assert_eq!(pair.verdict, kway.verdict);
    }

    #[test]
    fn position_stream_is_independent_of_other_queries() {
        let g = grid3();
        let u = g.require("4").unwrap();
        let a = k_betweenness_ordering(&g, &[u, 0], 25, 9).unwrap();
        let b = k_betweenness_ordering(&g, &[u, 2], 25, 9).unwrap();
        let ea = a.ranking.iter().find(|r| r.node == u).unwrap().estimate;
        let eb = b.ranking.iter().find(|r| r.node == u).unwrap().estimate;
        assert_eq!(ea.to_bits(), eb.to_bits());
    }

    #[test]
    fn duplicates_are_rejected() {
        let g = grid3();
        assert!(matches!(
            k_betweenness_ordering(&g, &[1, 2, 1], 5, 0),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            k_betweenness_ordering(&g, &[1], 5, 0),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            k_betweenness_ordering(&g, &[1, 99], 5, 0),
            Err(Error::UnknownNode(_))
        ));
    }

    #[test]
    fn grid_center_usually_beats_corner() {
        let g = grid3();
        let center = g.require("4").unwrap();
        let corner = g.require("0").unwrap();
        let exact = exact_betweenness(&g);
        assert!(exact[center as usize] > exact[corner as usize]);
        let mut correct = 0;
        for seed in 0..100 {
            let r = betweenness_ordering(&g, center, corner, 25, seed).unwrap();
            if r.verdict == Some(Verdict::FirstGreater) {
                correct += 1;
            }
        }
        assert!(correct >= 90, "only {correct}/100 orderings were right");
    }

    #[test]
    fn three_way_ranking_tracks_exact_scores() {
        let g = graph_from("a b\nb c\nc d\n");
        let a = g.require("a").unwrap();
        let b = g.require("b").unwrap();
        let c = g.require("c").unwrap();
        let r = k_betweenness_ordering(&g, &[a, b, c], 25, 3).unwrap();
        assert!(r.verdict.is_none());
        let top2: Vec<NodeId> = r.ranking[..2].iter().map(|x| x.node).collect();
        assert!(top2.contains(&b) && top2.contains(&c));
        assert_eq!(r.ranking[2].node, a);
    }
}
