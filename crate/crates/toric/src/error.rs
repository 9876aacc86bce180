//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by the geometry engine.
///
/// Every fallible operation in the crate returns one of these; conditions
/// that are ordinary results (a divisor failing to be Q-Cartier, a fan
/// failing a regularity predicate) are encoded in return values instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ToricError {
    #[error("empty matrix is not allowed here")]
    EmptyMatrix,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("singular system where a unique solution was required")]
    SingularSystem,

    #[error("cone is not pointed (its span contains a line)")]
    NotPointed,

    #[error("zero vector cannot be used as a ray or normal")]
    ZeroVector,

    #[error("polytope has no vertices")]
    EmptyPolytope,

    #[error("lattice point enumeration box exceeds the safety cap ({0} > {1})")]
    BoxTooLarge(String, String),

    #[error("fan is invalid: {0:?}")]
    InvalidFan(Vec<String>),

    #[error("ray lies outside the support of the fan")]
    RayOutsideSupport,

    #[error("operation requires a complete fan")]
    NotComplete,

    #[error("operation requires full-dimensional max cones; cone #{0} is not")]
    NotFullDimensional(usize),

    #[error("operation requires a simplicial fan; cone #{0} is not simplicial")]
    NotSimplicial(usize),

    #[error("fan is not Q-Gorenstein: no supporting level-1 functional on cone #{0}")]
    NotQGorenstein(usize),

    #[error("rays of the fan do not span the ambient space")]
    RaysDoNotSpan,

    #[error("relation is not of flipping type")]
    NotFlipping,

    #[error("invalid ray relation: {0}")]
    InvalidRelation(String),

    #[error("ill-formed weights: {0}")]
    IllFormedWeights(String),

    #[error("ill-formed cyclic quotient: {0}")]
    IllFormedQuotient(String),

    #[error("quotient order {0} exceeds the cap of 1000000")]
    QuotientOrderTooLarge(u64),

    #[error("divisor has {got} coefficients but the fan has {expected} rays")]
    DivisorLengthMismatch { expected: usize, got: usize },

    #[error("scenario error: {0}")]
    Scenario(String),

    #[error("unknown operation `{0}`")]
    UnknownOperation(String),
}

pub type Result<T> = std::result::Result<T, ToricError>;
