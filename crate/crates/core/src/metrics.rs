//! Evaluation metrics for estimator quality.
//!
//! * percentage error per node, and its average over the nodes with
//!   positive exact betweenness, each node averaged over several
//!   estimation repetitions;
//! * ordering efficiency: the fraction of node pairs whose estimated
//!   order agrees with the exact order, with equal exact scores demanding
//!   exactly equal estimates;
//! * relaxed efficiency, which drops pairs whose exact betweenness ranks
//!   are within a threshold of each other;
//! * Spearman rank correlation over the full score vectors.
//!
//! Pair enumeration is exhaustive when the budget covers all `C(n, 2)`
//! pairs and a uniform distinct sample otherwise.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::estimator::estimate;
use crate::graph::{Graph, NodeId};
use crate::rng::{derive_seed, seeded_rng};
use crate::sampling::{build_distribution, ModelKind};
use crate::shortest_paths::exact_betweenness;
use rand::Rng;

/// Internal seed lanes so the error protocol, the cached ordering
/// estimates and the pair sample never share a stream.
const LANE_ERROR: u64 = 1;
const LANE_ORDER: u64 = 2;
const LANE_PAIRS: u64 = 3;

/// Percentage error of one estimate against a positive exact score.
pub fn error_pct(exact: f64, approx: f64) -> Result<f64> {
    if exact <= 0.0 {
        return Err(Error::UndefinedMetric(
            "percentage error needs positive exact betweenness".into(),
        ));
    }
    Ok((exact - approx).abs() / exact * 100.0)
}

/// Average percentage error over all nodes with positive exact score.
///
/// Each node is estimated `reps` times with fresh seeds and its errors are
/// averaged first; the result is the mean of those per-node averages.
/// `exact` must be the output of [`exact_betweenness`] on `g`.
pub fn average_error(
    g: &Graph,
    exact: &[f64],
    model: ModelKind,
    samples: usize,
    reps: usize,
    seed: u64,
) -> Result<f64> {
    if reps == 0 {
        return Err(Error::InvalidArgument("need at least one repetition".into()));
    }
    let lane = derive_seed(seed, LANE_ERROR);
    let covered: Vec<NodeId> = (0..exact.len() as NodeId)
        .filter(|&v| exact[v as usize] > 0.0)
        .collect();
    if covered.is_empty() {
        return Err(Error::UndefinedMetric(
            "no node has positive exact betweenness".into(),
        ));
    }

    let per_node: Vec<Result<f64>> = covered
        .par_iter()
        .map(|&v| {
            let node_seed = derive_seed(lane, v as u64);
            let dist = build_distribution(g, model, v)?;
            let mut total = 0.0;
            for rep in 0..reps {
                let r = estimate(g, &dist, v, samples, derive_seed(node_seed, rep as u64))?;
                total += error_pct(exact[v as usize], r.estimate)?;
            }
            Ok(total / reps as f64)
        })
        .collect();

    let mut sum = 0.0;
    for e in per_node {
        sum += e?;
    }
    Ok(sum / covered.len() as f64)
}

/// Node pairs used for efficiency metrics.
#[derive(Debug, Clone)]
pub struct PairSet {
    pub pairs: Vec<(NodeId, NodeId)>,
    /// True when every unordered pair is present.
    pub exhaustive: bool,
}

/// All `C(n, 2)` pairs when the budget covers them, otherwise `budget`
/// distinct pairs drawn uniformly.
pub fn sample_pairs(n: usize, budget: usize, seed: u64) -> Result<PairSet> {
    if n < 2 {
        return Err(Error::InvalidArgument("pair sampling needs n >= 2".into()));
    }
    if budget == 0 {
        return Err(Error::InvalidArgument("pair budget must be positive".into()));
    }
    let all = n * (n - 1) / 2;
    if budget >= all {
        let mut pairs = Vec::with_capacity(all);
        for i in 0..n as NodeId {
            for j in (i + 1)..n as NodeId {
                pairs.push((i, j));
            }
        }
        return Ok(PairSet {
            pairs,
            exhaustive: true,
        });
    }

    let mut rng = seeded_rng(seed);
    let mut pairs = Vec::with_capacity(budget);
    if budget * 2 >= all {
        // Dense request: materialize and partially shuffle instead of
        // rejection sampling near saturation.
        let mut everything = Vec::with_capacity(all);
        for i in 0..n as NodeId {
            for j in (i + 1)..n as NodeId {
                everything.push((i, j));
            }
        }
        for k in 0..budget {
            let pick = rng.gen_range(k..everything.len());
            everything.swap(k, pick);
            pairs.push(everything[k]);
        }
    } else {
        let mut seen: HashSet<(NodeId, NodeId)> = HashSet::with_capacity(budget * 2);
        while pairs.len() < budget {
            let a = rng.gen_range(0..n) as NodeId;
            let b = rng.gen_range(0..n) as NodeId;
            if a == b {
                continue;
            }
            let key = (a.min(b), a.max(b));
            if seen.insert(key) {
                pairs.push(key);
            }
        }
    }
    Ok(PairSet {
        pairs,
        exhaustive: false,
    })
}

fn sign(x: f64) -> i8 {
    if x > 0.0 {
        1
    } else if x < 0.0 {
        -1
    } else {
        0
    }
}

/// Fraction of pairs ordered the same way by `approx` and `exact`.
///
/// A pair with equal exact scores counts as correct only when the
/// estimates are exactly equal too.
pub fn efficiency(exact: &[f64], approx: &[f64], pairs: &PairSet) -> f64 {
    let good = pairs
        .pairs
        .iter()
        .filter(|&&(i, j)| {
            let e = sign(exact[i as usize] - exact[j as usize]);
            let a = sign(approx[i as usize] - approx[j as usize]);
            e == a
        })
        .count();
    good as f64 / pairs.pairs.len() as f64
}

/// Competition ranks, descending: the highest score gets rank 1, ties
/// share the smallest rank of their run.
pub fn competition_ranks(scores: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..scores.len()).collect();
    idx.sort_by(|&a, &b| scores[b].partial_cmp(&scores[a]).unwrap());
    let mut ranks = vec![0usize; scores.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && scores[idx[j + 1]] == scores[idx[i]] {
            j += 1;
        }
        for k in i..=j {
            ranks[idx[k]] = i + 1;
        }
        i = j + 1;
    }
    ranks
}

/// Efficiency restricted to pairs whose exact ranks differ by more than
/// `t`. At `t = 0` this is plain [`efficiency`] over the same pair set.
pub fn relaxed_efficiency(
    exact: &[f64],
    approx: &[f64],
    pairs: &PairSet,
    t: usize,
) -> Result<f64> {
    if t == 0 {
        return Ok(efficiency(exact, approx, pairs));
    }
    let ranks = competition_ranks(exact);
    let kept: Vec<(NodeId, NodeId)> = pairs
        .pairs
        .iter()
        .copied()
        .filter(|&(i, j)| ranks[i as usize].abs_diff(ranks[j as usize]) > t)
        .collect();
    if kept.is_empty() {
        return Err(Error::UndefinedMetric(format!(
            "no pairs with rank distance above {t}"
        )));
    }
    Ok(efficiency(
        exact,
        approx,
        &PairSet {
            pairs: kept,
            exhaustive: false,
        },
    ))
}

fn fractional_ranks(xs: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..xs.len()).collect();
    idx.sort_by(|&a, &b| xs[a].partial_cmp(&xs[b]).unwrap());
    let mut ranks = vec![0.0f64; xs.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && xs[idx[j + 1]] == xs[idx[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for k in i..=j {
            ranks[idx[k]] = avg;
        }
        i = j + 1;
    }
    ranks
}

/// Spearman rank correlation: Pearson correlation of fractional ranks,
/// ties averaged. Undefined when either input is constant.
pub fn spearman_rho(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::InvalidArgument(
            "rank correlation needs vectors of equal length".into(),
        ));
    }
    if a.len() < 2 {
        return Err(Error::UndefinedMetric(
            "rank correlation needs at least two entries".into(),
        ));
    }
    let ra = fractional_ranks(a);
    let rb = fractional_ranks(b);
    let n = ra.len() as f64;
    let mean_a: f64 = ra.iter().sum::<f64>() / n;
    let mean_b: f64 = rb.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut var_a = 0.0;
    let mut var_b = 0.0;
    for i in 0..ra.len() {
        let da = ra[i] - mean_a;
        let db = rb[i] - mean_b;
        cov += da * db;
        var_a += da * da;
        var_b += db * db;
    }
    if var_a == 0.0 || var_b == 0.0 {
        return Err(Error::UndefinedMetric(
            "rank correlation undefined for constant scores".into(),
        ));
    }
    Ok(cov / (var_a.sqrt() * var_b.sqrt()))
}

/// Pairs are enumerated exhaustively up to this node count; larger graphs
/// fall back to a fixed-size uniform sample.
pub const EXHAUSTIVE_PAIR_NODE_LIMIT: usize = 3000;
/// Default size of that sample.
pub const DEFAULT_PAIR_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone)]
pub struct EvaluationConfig {
    pub model: ModelKind,
    pub samples: usize,
    pub reps: usize,
    /// None picks all pairs for small graphs and
    /// [`DEFAULT_PAIR_BUDGET`] sampled pairs otherwise.
    pub pair_budget: Option<usize>,
    pub relax_thresholds: Vec<usize>,
    pub seed: u64,
}

impl EvaluationConfig {
    pub fn new(model: ModelKind, seed: u64) -> Self {
        EvaluationConfig {
            model,
            samples: 25,
            reps: 5,
            pair_budget: None,
            relax_thresholds: vec![2, 3, 5, 10],
            seed,
        }
    }
}

/// One full evaluation run of a model on a graph.
#[derive(Debug, Clone, serde::Serialize)]
pub struct EvaluationReport {
    pub graph_id: String,
    pub model: ModelKind,
    pub samples: usize,
    pub reps: usize,
    pub avg_error_pct: f64,
    pub efficiency_pct: f64,
    /// `(threshold, relaxed efficiency in percent)` per configured t.
    pub relaxed_pct: Vec<(usize, f64)>,
    pub spearman: f64,
    pub pairs_evaluated: usize,
    pub exhaustive_pairs: bool,
    pub seed: u64,
}

/// Per-node estimates with one cached estimate per node, used for all
/// pairwise comparisons and the rank correlation.
pub fn cached_estimates(
    g: &Graph,
    model: ModelKind,
    samples: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    let lane = derive_seed(seed, LANE_ORDER);
    (0..g.node_count() as NodeId)
        .into_par_iter()
        .map(|v| {
            let dist = build_distribution(g, model, v)?;
            let r = estimate(g, &dist, v, samples, derive_seed(lane, v as u64))?;
            Ok(r.estimate)
        })
        .collect()
}

/// Run the full error / efficiency / rank-correlation protocol.
pub fn evaluate(g: &Graph, graph_id: &str, cfg: &EvaluationConfig) -> Result<EvaluationReport> {
    let n = g.node_count();
    let exact = exact_betweenness(g);
    let avg_error_pct = average_error(g, &exact, cfg.model, cfg.samples, cfg.reps, cfg.seed)?;
    let approx = cached_estimates(g, cfg.model, cfg.samples, cfg.seed)?;

    let budget = cfg.pair_budget.unwrap_or(if n <= EXHAUSTIVE_PAIR_NODE_LIMIT {
        n * (n - 1) / 2
    } else {
        DEFAULT_PAIR_BUDGET
    });
    let pairs = sample_pairs(n, budget, derive_seed(cfg.seed, LANE_PAIRS))?;

    let efficiency_pct = efficiency(&exact, &approx, &pairs) * 100.0;
    let mut relaxed_pct = Vec::with_capacity(cfg.relax_thresholds.len());
    for &t in &cfg.relax_thresholds {
        relaxed_pct.push((t, relaxed_efficiency(&exact, &approx, &pairs, t)? * 100.0));
    }
    let spearman = spearman_rho(&exact, &approx)?;

    Ok(EvaluationReport {
        graph_id: graph_id.to_string(),
        model: cfg.model,
        samples: cfg.samples,
        reps: cfg.reps,
        avg_error_pct,
        efficiency_pct,
        relaxed_pct,
        spearman,
        pairs_evaluated: pairs.pairs.len(),
        exhaustive_pairs: pairs.exhaustive,
        seed: cfg.seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, parse_edge_list, Graph};

    fn graph_from(text: &str) -> Graph {
        build_graph(&parse_edge_list(text).unwrap()).unwrap()
    }

    #[test]
    fn error_pct_basics() {
        assert_eq!(error_pct(4.0, 3.0).unwrap(), 25.0);
        assert_eq!(error_pct(4.0, 5.0).unwrap(), 25.0);
        assert_eq!(error_pct(4.0, 4.0).unwrap(), 0.0);
        assert!(matches!(
            error_pct(0.0, 1.0),
            Err(Error::UndefinedMetric(_))
        ));
    }

    #[test]
    fn average_error_of_exact_oracle_is_zero() {
        let g = graph_from("a b\nb c\nc d\n");
        let exact = exact_betweenness(&g);
        let e = average_error(&g, &exact, ModelKind::Optimal, 1, 3, 11).unwrap();
        assert!(e.abs() < 1e-7, "oracle error {e}");
    }

    #[test]
    fn average_error_undefined_without_positive_scores() {
        // Triangle: every node has betweenness 0.
        let g = graph_from("a b\nb c\nc a\n");
        let exact = exact_betweenness(&g);
        assert!(matches!(
            average_error(&g, &exact, ModelKind::Eddbm, 5, 2, 1),
            Err(Error::UndefinedMetric(_))
        ));
    }

    #[test]
    fn pair_sampling_modes() {
        let all = sample_pairs(5, 100, 1).unwrap();
        assert!(all.exhaustive);
        assert_eq!(all.pairs.len(), 10);

        let some = sample_pairs(50, 30, 2).unwrap();
        assert!(!some.exhaustive);
        assert_eq!(some.pairs.len(), 30);
        let distinct: HashSet<_> = some.pairs.iter().collect();
        assert_eq!(distinct.len(), 30);
        for &(i, j) in &some.pairs {
            assert!(i < j);
        }

        let dense = sample_pairs(10, 40, 3).unwrap();
        assert_eq!(dense.pairs.len(), 40);
        let distinct: HashSet<_> = dense.pairs.iter().collect();
        assert_eq!(distinct.len(), 40);

        let again = sample_pairs(50, 30, 2).unwrap();
        assert_eq!(some.pairs, again.pairs);
    }

    #[test]
    fn efficiency_of_exact_oracle_is_one() {
        let exact = vec![3.0, 1.0, 0.0, 7.0, 1.0];
        let pairs = sample_pairs(5, 100, 1).unwrap();
        assert_eq!(efficiency(&exact, &exact.clone(), &pairs), 1.0);
    }

    #[test]
    fn efficiency_counts_ties_strictly() {
        // Exact 0, 2, 0: a constant estimator only gets the (0, 0) pair.
        let exact = vec![0.0, 2.0, 0.0];
        let constant = vec![1.0, 1.0, 1.0];
        let pairs = sample_pairs(3, 10, 1).unwrap();
        let xi = efficiency(&exact, &constant, &pairs);
        assert!((xi - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn competition_ranks_share_on_ties() {
        let ranks = competition_ranks(&[10.0, 5.0, 5.0, 1.0]);
        assert_eq!(ranks, vec![1, 2, 2, 4]);
    }

    #[test]
    fn relaxed_efficiency_zero_threshold_is_plain_efficiency() {
        let exact = vec![5.0, 4.0, 3.0, 0.0, 0.0];
        let approx = vec![5.1, 3.9, 3.2, 0.0, 0.1];
        let pairs = sample_pairs(5, 100, 1).unwrap();
        let xi = efficiency(&exact, &approx, &pairs);
        let xi0 = relaxed_efficiency(&exact, &approx, &pairs, 0).unwrap();
        assert_eq!(xi.to_bits(), xi0.to_bits());
    }

    #[test]
    fn relaxed_efficiency_drops_close_ranks() {
        // Ranks: 1, 2, 3. Swapping adjacent scores is forgiven at t = 1.
        let exact = vec![3.0, 2.0, 1.0];
        let approx = vec![2.0, 3.0, 0.5];
        let pairs = sample_pairs(3, 10, 1).unwrap();
        let xi = efficiency(&exact, &approx, &pairs);
        assert!((xi - 2.0 / 3.0).abs() < 1e-15);
        let xi1 = relaxed_efficiency(&exact, &approx, &pairs, 1).unwrap();
        assert_eq!(xi1, 1.0);
        assert!(matches!(
            relaxed_efficiency(&exact, &approx, &pairs, 10),
            Err(Error::UndefinedMetric(_))
        ));
    }

    #[test]
    fn spearman_extremes_and_invariance() {
        let a = vec![1.0, 2.0, 3.0, 4.0];
        let up = vec![10.0, 20.0, 30.0, 40.0];
        let down = vec![8.0, 6.0, 4.0, 2.0];
        assert!((spearman_rho(&a, &up).unwrap() - 1.0).abs() < 1e-12);
        assert!((spearman_rho(&a, &down).unwrap() + 1.0).abs() < 1e-12);
        // Any strictly monotone transform leaves ranks alone.
        let squashed: Vec<f64> = a.iter().map(|x| x.sqrt()).collect();
        assert!((spearman_rho(&a, &squashed).unwrap() - 1.0).abs() < 1e-12);
        assert!(matches!(
            spearman_rho(&a, &[1.0, 1.0, 1.0, 1.0]),
            Err(Error::UndefinedMetric(_))
        ));
    }

    #[test]
    fn evaluate_produces_a_complete_report() {
        let g = crate::generators::generate_er(60, 0.1, 4).unwrap();
        let mut cfg = EvaluationConfig::new(ModelKind::Eddbm, 21);
        cfg.samples = 10;
        cfg.reps = 2;
        let report = evaluate(&g, "er-test", &cfg).unwrap();
        assert_eq!(report.graph_id, "er-test");
        assert!(report.exhaustive_pairs);
        assert_eq!(report.pairs_evaluated, g.node_count() * (g.node_count() - 1) / 2);
        assert!(report.avg_error_pct >= 0.0);
        assert!(report.efficiency_pct > 50.0);
        assert_eq!(report.relaxed_pct.len(), 4);
        assert!(report.spearman > 0.5);
    }
}
