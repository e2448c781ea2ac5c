//! Crate-wide error type.
//!
//! Domain violations are errors, not panics: handing an off-relation
//! character to a quotient-ring operation, asking for the trivial character
//! in a characteristic-variety test, or requesting Hodge data that a
//! resolution datum does not carry all surface as [`Error`] values so a
//! caller (in particular the CLI) can report them and exit cleanly.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input text (polynomial, rational number, JSON payload) failed to parse.
    #[error("parse error: {0}")]
    Parse(String),

    /// Matrix or complex shapes are inconsistent.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// The character does not lie on the subtorus cut out by the cone
    /// relation, so the quotient-ring specialization is undefined.
    #[error("character violates the cone relation: weighted coordinate sum {sum} is not an integer")]
    RelationViolation { sum: String },

    /// The trivial character is excluded from the operation.
    #[error("the trivial character is excluded from {context}")]
    IdentityExcluded { context: &'static str },

    /// Consecutive differentials do not compose to zero.
    #[error("not a complex: the composite into degree {degree} is nonzero")]
    NotAComplex { degree: usize },

    /// Branching data whose greatest common divisor with the cover degree
    /// exceeds one describes a disconnected cover.
    #[error("disconnected cover: gcd of branching data and degree is {gcd} > 1")]
    DisconnectedCover { gcd: u64 },

    /// The resolution datum carries no Hodge-number block for some stratum.
    #[error("missing Hodge data: {0}")]
    MissingHodge(String),

    /// The hyperplane is a facet hyperplane of the unit cube, where the
    /// face-slicing operation is not defined.
    #[error("hyperplane {0} is a facet hyperplane of the unit cube")]
    CubeFacet(String),

    /// Polytope data violates the conventions (nonnegative coefficients,
    /// containment in the unit cube).
    #[error("invalid polytope data: {0}")]
    InvalidPolytope(String),

    /// The number of minors requested from a Fitting-ideal computation
    /// exceeds the configured budget.
    #[error("minor budget exceeded: {count} minors requested, cap is {cap}")]
    MinorBudgetExceeded { count: u128, cap: u128 },

    /// Any other domain violation (zero cover degree, empty stratum list, ...).
    #[error("{0}")]
    Domain(String),
}
