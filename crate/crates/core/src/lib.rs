//! Betweenness centrality estimation and ordering through non-uniform
//! pivot sampling.
//!
//! The pipeline: build an undirected [`graph::Graph`] (from an edge list
//! or a [`generators`] call), pick a pivot [`sampling`] model around a
//! target node, run the [`estimator`] to approximate that node's
//! betweenness from a handful of single-source dependency passes, and
//! rank nodes with [`ordering`]. [`metrics`] scores estimators against
//! the exact [`shortest_paths`] baseline and [`analysis`] predicts BFS
//! level structure on G(n, p), which motivates the exponential-decay
//! sampling model.
//!
//! Everything randomized takes an explicit `u64` seed and is reproducible
//! bit for bit, independent of the rayon thread count.

pub mod analysis;
pub mod error;
pub mod estimator;
pub mod generators;
pub mod graph;
pub mod metrics;
pub mod ordering;
pub mod rng;
pub mod sampling;
pub mod shortest_paths;

pub use error::{Error, Result};
pub use estimator::{estimate, estimate_with_model, EstimationResult};
pub use graph::{build_graph, parse_edge_list, EdgeList, Graph, NodeId};
pub use ordering::{betweenness_ordering, k_betweenness_ordering, OrderingResult, Verdict};
pub use sampling::{build_distribution, sample_pivot, ModelKind, SamplingDistribution};
pub use shortest_paths::{bfs, dependencies, exact_betweenness, exact_betweenness_single};
