use thiserror::Error;

/// Errors raised by the poset and polytope machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("cover relation {0} < {1} creates a cycle")]
    Cycle(String, String),
    #[error("cover {0} < {1} is implied by the other covers")]
    RedundantCover(String, String),
    #[error("invalid marked poset: {0}")]
    InvalidMarking(String),
    #[error("marking is infeasible: {0}")]
    InfeasibleMarking(String),
    #[error("labeling is not a natural labeling: {0}")]
    BadLabeling(String),
    #[error("invalid chain/order partition: {0}")]
    BadPartition(String),
    #[error("not a partition of the poset: {0}")]
    NotAPartition(String),
    #[error("point lies outside the polytope")]
    PointOutsidePolytope,
    #[error("polyhedron is unbounded")]
    UnboundedPolytope,
    #[error("polyhedron is empty")]
    EmptyPolytope,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("work cap exceeded: {what} needs {needed} steps, cap is {cap}")]
    WorkCapExceeded { what: &'static str, needed: u128, cap: u64 },
    #[error("integer overflow while counting lattice points")]
    Overflow,
    #[error("duplicate abscissa {0} in interpolation data")]
    DuplicateAbscissa(String),
    #[error("polytope has a non-integral vertex")]
    NonIntegralVertices,
    #[error("marking is not integral")]
    NonIntegralMarking,
    #[error("Ehrhart verification failed at n = {n}: polynomial gives {predicted}, count is {counted}")]
    VerificationFailed { n: u64, predicted: String, counted: String },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("constraint has no nonzero coefficient")]
    TrivialConstraint,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
