//! Exact solver for the lattice membership problem and the closest vector
//! problem under ℓp and polyhedral norms.
//!
//! Everything is computed in arbitrary-precision rational arithmetic. The
//! membership algorithm is Lenstra-style: round the body with an ellipsoid,
//! find a flatness direction, slice along it and recurse, while hyperplane
//! coefficients are kept small by Frank–Tardos replacement.

pub mod cvp;
pub mod diophantine;
pub mod exact;
pub mod flatness;
pub mod geometry;
pub mod lattice;
pub mod membership;
pub mod oracle;
pub mod rounding;

pub use exact::{IntMatrix, IntVector, Integer, RatMatrix, RatVector, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("columns are linearly dependent")]
    RankDeficient,
    #[error("negative radicand")]
    NegativeRadicand,
    #[error("matrix is singular")]
    Singular,
    #[error("form is not positive definite")]
    NotPositiveDefinite,
    #[error("hyperplane normals are linearly dependent")]
    DependentNormals,
    #[error("normal lies in the span of the subspace normals")]
    DependentInput,
    #[error("affine subspace contains no integer point")]
    NoIntegerPointInSubspace,
    #[error("body is not full-dimensional")]
    Degenerate,
    #[error("recursion depth exceeded the dimension")]
    DepthExceeded,
    #[error("zero subgradient at a point outside the body")]
    ZeroSubgradientOutside,
    #[error("target is not in the span of the lattice")]
    TargetOutsideSpan,
    #[error("enumeration budget exceeded")]
    BudgetExceeded,
    #[error("dimension {0} exceeds the configured maximum {1}")]
    DimensionTooLarge(usize, usize),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
