//! Error types shared across the crate.
//!
//! Every failure carries enough wording to tell the caller *which* hypothesis
//! of the underlying combinatorial formulas broke. Hypothesis failures are
//! expected on valid-but-out-of-scope inputs; internal failures mean one of
//! the cross-checked identities disagreed with itself and the result cannot
//! be trusted.

use thiserror::Error;

/// Coarse classification used by the CLI to pick an exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// A hypothesis of a formula does not hold for this input (exit code 1).
    Hypothesis,
    /// The input text or JSON could not be parsed (exit code 2).
    Parse,
    /// Two routes that must agree disagreed, or a structural invariant
    /// failed at runtime (exit code 3).
    Internal,
}

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("zero polynomial: all monomials cancelled")]
    ZeroPolynomial,

    #[error("exponent {value} exceeds the configured bound {bound}")]
    ExponentOverflow { value: i64, bound: i64 },

    #[error("invalid support: {0}")]
    InvalidSupport(String),

    #[error("not simplicial: {face} has {vertices} vertices but dimension {dim}")]
    NotSimplicial {
        face: String,
        vertices: usize,
        dim: i64,
    },

    #[error("not convenient: no support point on the x{axis}-axis")]
    NotConvenient { axis: usize },

    #[error("convenient input: axis gap set is empty, use the isolated-singularity pipeline")]
    Convenient,

    #[error("wrong dimension: expected n = {expected}, got n = {got}")]
    WrongDimension { expected: String, got: usize },

    #[error("wrong face dimension: expected {expected}, got {got}")]
    WrongFaceDimension { expected: i64, got: i64 },

    #[error("face is not compact")]
    NotCompact,

    #[error("support misses the coordinate plane spanned by axes x{i} and x{j}")]
    PlaneCondition { i: usize, j: usize },

    #[error("empty restriction: no support point lies in the coordinate subspace {{{subset}}}")]
    EmptyRestriction { subset: String },

    #[error("non-integer exponent {exp} in a combinatorial polynomial")]
    NonIntegerExponent { exp: String },

    #[error("no lifting face determines the transversal monodromy exponent for alpha = {alpha} on the x{axis}-slice")]
    LiftNotFound { axis: usize, alpha: String },

    #[error("parallelepiped scan too large ({volume} candidate points); input exceeds desk scale")]
    ScanTooLarge { volume: u128 },

    #[error("route mismatch in {what}: {detail}")]
    RouteMismatch { what: String, detail: String },

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("conjecture violation: {0}")]
    ConjectureViolation(String),
}

impl Error {
    /// Classify for exit-code mapping.
    pub fn kind(&self) -> ErrorKind {
        use Error::*;
        match self {
            Syntax { .. } | ZeroPolynomial | ExponentOverflow { .. } | InvalidSupport(_) => {
                ErrorKind::Parse
            }
            NotSimplicial { .. }
            | NotConvenient { .. }
            | Convenient
            | WrongDimension { .. }
            | WrongFaceDimension { .. }
            | NotCompact
            | PlaneCondition { .. }
            | EmptyRestriction { .. }
            | NonIntegerExponent { .. }
            | LiftNotFound { .. }
            | ScanTooLarge { .. } => ErrorKind::Hypothesis,
            RouteMismatch { .. } | Invariant(_) | ConjectureViolation(_) => ErrorKind::Internal,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
