use thiserror::Error;

/// Errors shared across the graph, sampling, estimation and metrics modules.
#[derive(Debug, Error)]
pub enum Error {
    /// An edge list line that is not a comment and does not hold exactly two tokens.
    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },

    /// Cleanup left no usable edges (everything was a self loop or the input was empty).
    #[error("graph is empty after cleanup")]
    EmptyGraph,

    /// A node index outside `[0, n)` or a label that is not in the graph.
    #[error("unknown node: {0}")]
    UnknownNode(String),

    /// A sampling distribution whose support would be empty.
    #[error("sampling distribution has empty support: {0}")]
    EmptySupport(String),

    /// Drawing a pivot from the all-zero distribution is meaningless.
    #[error("cannot sample from the zero distribution")]
    ZeroDistribution,

    /// Estimator was handed a distribution built for a different node or graph.
    #[error("distribution mismatch: {0}")]
    DistributionMismatch(String),

    /// A metric whose defining denominator or index set is empty.
    #[error("metric undefined: {0}")]
    UndefinedMetric(String),

    /// Precondition violations: zero samples, duplicate nodes, bad parameters.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
