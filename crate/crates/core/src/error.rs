use thiserror::Error;

use crate::coloring::Rejection;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} index {index} out of range (must be < {bound})")]
    OutOfRange {
        what: &'static str,
        index: usize,
        bound: usize,
    },

    #[error("host K_{{{m},{n}}} outside supported limits (1 <= m <= {max_m}, 1 <= n <= {max_n})")]
    HostLimit {
        m: usize,
        n: usize,
        max_m: usize,
        max_n: usize,
    },

    #[error("scale guard: {what} refuses host K_{{{m},{n}}} (limit {limit}); pass the override flag to run anyway")]
    ScaleGuard {
        what: &'static str,
        m: usize,
        n: usize,
        limit: String,
    },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("unknown fixture `{name}` (valid: {valid})")]
    UnknownFixture { name: String, valid: String },

    #[error("malformed witness: {0}")]
    WitnessFormat(String),

    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("coloring rejected: {0}")]
    Rejected(Rejection),

    #[error("assignment does not satisfy clause #{index}: {clause:?}")]
    Unsatisfied { index: usize, clause: Vec<i32> },

    #[error("encoder integrity failure: satisfying assignment decoded to a bad coloring ({0})")]
    EncoderIntegrity(Rejection),
}
