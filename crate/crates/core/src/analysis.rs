//! Level-structure analysis of BFS trees in G(n, p).
//!
//! `alpha_m` is the expected number of nodes at BFS distance `m` from a
//! source. Two forms are tracked: the linearized recurrence
//!
//! ```text
//! alpha_{m+1} = n p (1 - sum_{j<=m} alpha_j / n) alpha_m
//! ```
//!
//! and the saturation-aware form
//!
//! ```text
//! alpha_{m+1} = (n - sum_{j<=m} alpha_j)(1 - (1-p)^{alpha_m}),
//! ```
//!
//! both started from `alpha_0 = 1`. The depletion factors
//! `c_m = 1 - sum_{j<=m-1} alpha_j / n` feed the expected-dependency
//! ladder: a node at level `m - j` of a BFS tree with last level `m` has
//! expected dependency `c_{m-j+1} L (1 + c_{m-j+2} L (1 + ...))` with
//! `L = n p`, evaluated innermost at the last level.

use crate::error::{Error, Result};
use crate::generators::generate_er;
use crate::graph::NodeId;
use crate::rng::{derive_seed, seeded_rng};
use crate::shortest_paths::bfs;
use rand::seq::SliceRandom;

/// Predicted BFS level populations for G(n, p).
#[derive(Debug, Clone)]
pub struct LevelProfile {
    pub n: u64,
    pub p: f64,
    /// Branching parameter `n p`.
    pub lambda: f64,
    /// Linearized recurrence, truncated at the first level that would
    /// drop below 0.5 or overdraw the remaining node budget.
    pub alpha: Vec<f64>,
    /// Saturation form, truncated at 0.5 as well.
    pub alpha_exact: Vec<f64>,
    /// `c[m] = 1 - sum(alpha[..m]) / n`, one entry past the last level.
    pub c: Vec<f64>,
    /// Deepest nested correction factor (the `k = last level` case);
    /// 0 when the profile is too shallow for any ratio.
    pub phi: f64,
}

impl LevelProfile {
    /// Index of the deepest predicted level.
    pub fn last_level(&self) -> usize {
        self.alpha.len() - 1
    }
}

/// Run both level recurrences for G(n, p).
pub fn predict_levels(n: u64, p: f64, max_levels: usize) -> Result<LevelProfile> {
    if n < 2 {
        return Err(Error::InvalidArgument("level prediction needs n >= 2".into()));
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "level prediction needs 0 < p < 1, got {p}"
        )));
    }
    if max_levels == 0 {
        return Err(Error::InvalidArgument("max_levels must be positive".into()));
    }

    let nf = n as f64;
    let lambda = nf * p;

    let mut alpha = vec![1.0f64];
    let mut used = 1.0;
    while alpha.len() < max_levels {
        let next = lambda * (1.0 - used / nf) * alpha.last().unwrap();
        // Stop before fractional or overdrawn levels; the linearization
        // has no natural end of its own.
        if next < 0.5 || next > nf - used {
            break;
        }
        alpha.push(next);
        used += next;
    }

    let mut alpha_exact = vec![1.0f64];
    let mut used_exact = 1.0;
    while alpha_exact.len() < max_levels {
        let remaining = nf - used_exact;
        let next = remaining * (1.0 - (1.0 - p).powf(*alpha_exact.last().unwrap()));
        if next < 0.5 {
            break;
        }
        alpha_exact.push(next);
        used_exact += next;
    }

    let mut c = Vec::with_capacity(alpha.len() + 1);
    let mut sum = 0.0;
    c.push(1.0);
    for &a in &alpha {
        sum += a;
        c.push(1.0 - sum / nf);
    }

    let mut profile = LevelProfile {
        n,
        p,
        lambda,
        alpha,
        alpha_exact,
        c,
        phi: 0.0,
    };
    let l = profile.last_level();
    if l >= 2 {
        profile.phi = nested_phi(&profile, l);
    }
    Ok(profile)
}

/// Expected dependency of a source on a node sitting at `level_of_v` in a
/// BFS tree whose deepest level is `last_level`.
///
/// Zero at the last level; one level up it is `c_last * lambda`; each
/// further step wraps another `c * lambda * (1 + ...)` around the ladder.
pub fn expected_dependency(
    profile: &LevelProfile,
    level_of_v: usize,
    last_level: usize,
) -> Result<f64> {
    if level_of_v == 0 || level_of_v > last_level || last_level > profile.last_level() {
        return Err(Error::InvalidArgument(format!(
            "levels out of range: node at {level_of_v}, last {last_level}, profile depth {}",
            profile.last_level()
        )));
    }
    let mut acc = 0.0;
    for d in ((level_of_v + 1)..=last_level).rev() {
        acc = profile.c[d] * profile.lambda * (1.0 + acc);
    }
    Ok(acc)
}

fn nested_phi(profile: &LevelProfile, k: usize) -> f64 {
    let l = profile.last_level();
    // phi for levels (l-k, l-k+1) is the dependency ladder one level in,
    // divided by lambda.
    let ladder = expected_dependency(profile, l - k + 1, l).unwrap_or(0.0);
    ladder / profile.lambda
}

/// Predicted ratio of expected dependencies between levels `l - k` and
/// `l - k + 1`, where `l` is the profile's last level:
/// `c_{l-k+1} (1 / phi + lambda)`.
///
/// Valid for `2 <= k <= l`; `k = 2` reduces to
/// `c_{l-1} (1 + c_l lambda) / c_l`.
pub fn dependency_ratio(profile: &LevelProfile, k: usize) -> Result<f64> {
    let l = profile.last_level();
    if k < 2 || k > l {
        return Err(Error::InvalidArgument(format!(
            "ratio needs 2 <= k <= {l}, got {k}"
        )));
    }
    let phi = nested_phi(profile, k);
    if phi == 0.0 {
        return Err(Error::UndefinedMetric(
            "dependency ratio undefined: nested correction is zero".into(),
        ));
    }
    Ok(profile.c[l - k + 1] * (1.0 / phi + profile.lambda))
}

/// Measured BFS level sizes over freshly generated G(n, p) instances.
#[derive(Debug, Clone)]
pub struct EmpiricalLevels {
    /// Mean node count per level, level 0 first; sources whose BFS ends
    /// early count as zero on the deeper levels.
    pub mean: Vec<f64>,
    pub std: Vec<f64>,
    pub samples: usize,
}

/// Sample BFS level sizes from `graphs` instances of G(n, p), taking
/// `sources_per_graph` distinct random sources in each.
pub fn empirical_levels(
    n: u64,
    p: f64,
    graphs: usize,
    sources_per_graph: usize,
    seed: u64,
) -> Result<EmpiricalLevels> {
    if graphs == 0 || sources_per_graph == 0 {
        return Err(Error::InvalidArgument(
            "need at least one graph and one source".into(),
        ));
    }
    let mut profiles: Vec<Vec<f64>> = Vec::new();
    for gi in 0..graphs {
        let g = generate_er(n, p, derive_seed(seed, gi as u64))?;
        let mut nodes: Vec<NodeId> = g.nodes().collect();
        let mut rng = seeded_rng(derive_seed(seed, (graphs + gi) as u64));
        nodes.shuffle(&mut rng);
        for &s in nodes.iter().take(sources_per_graph.min(nodes.len())) {
            let r = bfs(&g, s);
            let mut sizes: Vec<f64> = Vec::new();
            for &w in &r.order {
                let d = r.distance(w).unwrap() as usize;
                if sizes.len() <= d {
                    sizes.resize(d + 1, 0.0);
                }
                sizes[d] += 1.0;
            }
            profiles.push(sizes);
        }
    }

    let samples = profiles.len();
    let depth = profiles.iter().map(|p| p.len()).max().unwrap_or(0);
    let mut mean = vec![0.0f64; depth];
    let mut std = vec![0.0f64; depth];
    for d in 0..depth {
        let total: f64 = profiles.iter().map(|p| p.get(d).copied().unwrap_or(0.0)).sum();
        mean[d] = total / samples as f64;
    }
    if samples > 1 {
        for d in 0..depth {
            let ss: f64 = profiles
                .iter()
                .map(|p| {
                    let x = p.get(d).copied().unwrap_or(0.0) - mean[d];
                    x * x
                })
                .sum();
            std[d] = (ss / (samples - 1) as f64).sqrt();
        }
    }
    Ok(EmpiricalLevels { mean, std, samples })
}
