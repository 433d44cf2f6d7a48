use thiserror::Error;

use crate::lp::LpStatus;

/// Errors surfaced by solvers and model operations.
#[derive(Debug, Error)]
pub enum Error {
    /// An instance failed validation; the report lists every violated invariant.
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    /// Operand dimensions do not match the instance.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A parameter is outside its documented range (e.g. `k > |R|`).
    #[error("bad parameter: {0}")]
    BadParameter(String),

    /// A dense enumeration would exceed the configured size guard.
    #[error("size guard exceeded: needs {needed}, guard is {guard}")]
    SizeGuard { needed: usize, guard: usize },

    /// The underlying LP did not come back optimal.
    #[error("LP solve failed with status {0:?}")]
    LpFailed(LpStatus),

    /// A transportation/flow problem has no feasible assignment.
    #[error("infeasible: {0}")]
    Infeasible(String),

    /// Column generation hit its iteration cap without converging.
    #[error("column generation did not converge within {iterations} rounds")]
    NonConvergence { iterations: usize },

    /// `compose_joint` requires target c0 marginals to dominate the base scheme's.
    #[error("dominance precondition violated at receiver {receiver}, state {state}: target {target} < base {base}")]
    DominanceViolated {
        receiver: usize,
        state: usize,
        target: f64,
        base: f64,
    },

    /// Scheme construction rejected a malformed probability table.
    #[error("invalid scheme: {0}")]
    InvalidScheme(String),

    /// Wire-format parsing or name resolution failed.
    #[error("format error: {0}")]
    Format(String),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}
