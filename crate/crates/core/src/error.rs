use thiserror::Error;

use crate::laurent::ParseError;

/// Errors raised by the library. Domain outcomes that are expected to fail
/// (a facet that is not mutable, a non-admissible pair) are reported as
/// values, not through this type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("no primitive direction: zero vector")]
    NoPrimitiveDirection,
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("vector {0} is not primitive")]
    NotPrimitive(String),
    #[error("matrix is not unimodular")]
    NotUnimodular,
    #[error("empty point list")]
    EmptyPointSet,
    #[error("polyhedron is not pointed (its recession cone contains a line)")]
    NotPointed,
    #[error("polyhedron is empty")]
    Infeasible,
    #[error("polyhedron is unbounded: {0}")]
    Unbounded(&'static str),
    #[error("origin is not in the interior")]
    OriginNotInterior,
    #[error("direction not admissible for slicing: {0}")]
    DirectionNotAdmissible(String),
    #[error("Newton polytope undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("not a mutation: slice {slice} is not divisible by the divisor power")]
    NotAMutation { slice: i64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("admissibility not certified: {0}")]
    Admissibility(String),
    #[error("hypotheses failed: {}", .0.join("; "))]
    Hypotheses(Vec<String>),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
