//! Crate-wide error type.

use thiserror::Error;

/// Errors surfaced by validation, factorization bounds and the theorem layer.
///
/// Kernel arithmetic on mismatched arities is a programming error and panics;
/// everything reachable from user input goes through this enum.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at {span}: {message}")]
    Syntax { span: usize, message: String },

    #[error("polynomial is not homogeneous (term degrees {degrees:?})")]
    NotHomogeneous { degrees: Vec<u32> },

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: u32, found: u32 },

    #[error("total degree {degree} exceeds the configured bound {bound}")]
    DegreeBoundExceeded { degree: u32, bound: u32 },

    #[error("the pair has a fixed component: {common}")]
    FixedComponent { common: String },

    #[error("the two forms are proportional")]
    Proportional,

    #[error("the map has a common projective zero and is not a morphism")]
    NotAMorphism,

    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,

    #[error("singular matrix")]
    SingularMatrix,

    #[error("the pencil is not invariant under the map: {reason}")]
    NotInvariant { reason: String },

    #[error("singular members with non-rational parameters: {minimal_polynomials:?}")]
    UnresolvedAlgebraicMember { minimal_polynomials: Vec<String> },

    #[error("e-invariant {e} outside {{2,3}} for a certified invariant pair")]
    DichotomyViolation { e: i64 },

    #[error("bad line: {reason}")]
    BadLine { reason: String },

    #[error("inconclusive line (non-simple tangency); retry with another line")]
    InconclusiveLine,

    #[error("pencil is not irreducible over Q at the sampled parameters")]
    NotIrreducible,

    #[error("invalid family spec: {reason}")]
    InvalidFamilySpec { reason: String },

    #[error("degenerate Macaulay matrix after {tries} coordinate changes")]
    MacaulayDegenerate { tries: u32 },

    #[error("no generic position found after {tries} seeded coordinate changes")]
    GenericPositionFailed { tries: u32 },

    #[error("invariance has not been certified for this pair")]
    NotCertified,

    #[error("precondition violated: {reason}")]
    Precondition { reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
