//! Crate-wide error type.

use thiserror::Error;

/// Errors reported by fallible constructors and solvers.
///
/// Arithmetic on mismatched shapes (different variable counts, wrong matrix
/// dimensions) is a programming error and panics instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Text input that does not match the polynomial grammar.
    #[error("parse error: {0}")]
    Parse(String),

    /// Input that must be a monomial with all exponents at least one.
    #[error("not a valid monomial: {0}")]
    InvalidMonomial(String),

    /// A structured input (point set, decomposition, gap system, value set)
    /// that violates a documented invariant.
    #[error("invalid input: {0}")]
    Invalid(String),

    /// The linear system of a requested decomposition is inconsistent: the
    /// target is not a combination of powers of the given points.
    #[error("no solution: {0}")]
    NoSolution(String),

    /// A precondition of the requested operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// An internal cross-check failed; this indicates a bug, not bad input.
    #[error("internal defect: {0}")]
    InternalDefect(String),
}
