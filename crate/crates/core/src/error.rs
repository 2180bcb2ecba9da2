//! Error taxonomy.
//!
//! `Input` covers everything a caller can fix (bad dimensions, malformed
//! rationals, unknown catalog names, non-embeddable subalgebra data).
//! `Internal` marks a violated self-check; it must never surface on data
//! the crate itself produced and maps to a distinct process exit code in
//! the CLI so that silent inconsistency cannot masquerade as a verdict.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("zero vector has no primitive representative")]
    ZeroVector,

    #[error("invalid rational literal {0:?}")]
    BadRational(String),

    #[error("weights do not span the space (rank {rank} < {need})")]
    WeightsDoNotSpan { rank: usize, need: usize },

    #[error("h does not embed: weight ({weight}) has multiplicity {have} in g but {need} in h")]
    SubtractionUnderflow {
        weight: String,
        have: usize,
        need: usize,
    },

    #[error("zero-weight space too small: dim_zero {have} in g but {need} in h")]
    ZeroSpaceUnderflow { have: usize, need: usize },

    #[error("not semisimple data: {0}")]
    NotSemisimple(String),

    #[error("not volume-preserving: weight ({weight}) lacks its negative")]
    NotNegateClosed { weight: String },

    #[error("unknown catalog entry {0:?}")]
    UnknownEntry(String),

    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),

    #[error("realization not split over Q: {0}")]
    NotSplit(String),

    #[error("no ambient Weyl data attached to this pair")]
    MissingAmbient,

    #[error("rank too large for rho_q^min: {0}")]
    RankTooLarge(String),

    #[error("schema violation at {pointer}: {message}")]
    Schema { pointer: String, message: String },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// True for defects in this crate rather than in caller data.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}
