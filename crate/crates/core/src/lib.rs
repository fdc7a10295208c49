//! Exact arithmetic for Waring decompositions of monomials.
//!
//! A Waring decomposition of a degree-`d` form `M` writes it as a sum of
//! `d`-th powers of linear forms; the smallest possible number of summands is
//! the Waring rank of `M`. For a monomial `M = x0^a0 * ... * xn^an` the
//! complex rank has a closed formula, while the real rank is only known
//! exactly in special cases and is bracketed by constructive bounds
//! otherwise. This crate computes those ranks, builds explicit real
//! decompositions from structured apolar point sets, certifies them by
//! symbolic expansion, and counts real solutions of zero-dimensional
//! "gap-shaped" polynomial systems through the Hermite trace form.
//!
//! Everything is computed over exact scalars; the [`Q`] alias
//! (arbitrary-precision rationals) is the type every shipped interface uses.
//! The algebraic core is generic over [`scalar::Scalar`], so the same code
//! runs over any exact ordered field.

pub mod apolarity;
pub mod constructors;
pub mod error;
pub mod hermite;
pub mod linalg;
pub mod poly;
pub mod ranks;
pub mod scalar;
pub mod text;
pub mod unipoly;

pub use apolarity::{
    decomposition_from_json, decomposition_to_json, perp_membership, solve_decomposition,
    Decomposition, DecompositionTerm, PointSet, ProjectivePoint, SolveDiagnostics,
};
pub use constructors::{
    decompose_real, gapped_roots, min_points_a0_eq_1, min_points_a0_eq_1_with_values,
    squares_decomposition, upper_bound_points, GappedRootSet,
};
pub use error::Error;
pub use hermite::{
    check_gap_obstruction, count_real_points, random_gap_systems, signature, GapSystem, Inertia,
    QuotientAlgebra,
};
pub use poly::{apply_diff, LinearForm, Monomial, Polynomial};
pub use ranks::{
    complex_rank, rank_report, real_equals_complex, real_rank_exact, real_rank_lower,
    real_rank_upper, Method, RankReport,
};
pub use scalar::Scalar;
pub use unipoly::{elementary_symmetric, UniPoly};

/// The exact rational scalar used by the CLI, the JSON formats and the tests.
pub type Q = num_rational::BigRational;

/// Multivariate polynomial over [`Q`].
pub type QPoly = Polynomial<Q>;
/// Dense univariate polynomial over [`Q`].
pub type QUniPoly = UniPoly<Q>;
/// Linear form over [`Q`].
pub type QLinearForm = LinearForm<Q>;
/// Projective point with [`Q`] coordinates.
pub type QPoint = ProjectivePoint<Q>;
/// Finite set of projective points over [`Q`].
pub type QPointSet = PointSet<Q>;
/// Power-sum decomposition over [`Q`].
pub type QDecomposition = Decomposition<Q>;
/// Gap-shaped polynomial system over [`Q`].
pub type QGapSystem = GapSystem<Q>;
