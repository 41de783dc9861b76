use thiserror::Error;

use crate::graph::ValidationReport;

#[derive(Debug, Error)]
pub enum ReebError {
    #[error("invalid graph: {0}")]
    Invalid(ValidationReport),

    #[error("level {level} is removable but carries order relations")]
    OrderConflict { level: usize },

    #[error("bad level set: {0}")]
    BadLevelSet(String),

    #[error("invalid cut choice: {0}")]
    InvalidChoice(String),

    #[error("not a tree: Betti number is {0}")]
    NotATree(usize),

    #[error("not rooted: {0} vertices have indegree 0")]
    NotRooted(usize),

    /// Raised when `|E| - |V| + 1` differs from the sum of `indeg - 1` over
    /// merge vertices. For a connected graph this happens exactly when the
    /// graph has more than one maximum.
    #[error("Betti formulas disagree (euler {euler}, reticulation {reticulation}); the graph has several maxima")]
    InconsistentBetti { euler: usize, reticulation: usize },

    #[error("graph carries no edge labels")]
    MissingLabels,

    #[error("edge label sets differ at gap {0}")]
    LabelMismatch(usize),

    #[error("search budget of {0} nodes exceeded")]
    SizeLimitExceeded(u64),

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("empty point set")]
    EmptySet,

    #[error("incompatible shapes: {0}")]
    IncompatibleShape(String),

    #[error("infeasible generator spec: {0}")]
    InfeasibleSpec(String),

    #[error("leaf ordering does not match the tree: {0}")]
    BadOrdering(String),

    #[error("exponent must be a positive integer or infinity")]
    BadExponent,
}
