//! Exact computational algebra for central hyperplane arrangements over the
//! rationals: power ideals, Macaulay inverse systems, Hilbert functions,
//! matroids and Tutte polynomials.
//!
//! All arithmetic is exact. The linear-algebra and polynomial kernels are
//! generic over a [`Scalar`] field type; the crate-level aliases fix the
//! scalar to arbitrary-precision rationals, which is what every shipped
//! computation uses.

pub mod arrangement;
pub mod error;
pub mod ideal;
pub mod linalg;
pub mod matroid;
pub mod poly;
pub mod scalar;

pub use arrangement::{Arrangement, Stratum};
pub use error::Error;
pub use ideal::{
    a_monomial_span, c_equals_cprime, degree_one_component, exact_sequence_defect, AMonomialSpan,
    DegreeOneComponent, GeneratorFamily, HilbertFunction, IdealSpec, StratumGenerators, Variant,
};
pub use linalg::{subspace_sum, Matrix, Rref, SpanBuilder};
pub use matroid::{
    isomorphic_matroids, same_matroid, tutte, tutte_basis_activities, tutte_deletion_contraction,
    MatroidOracle, TuttePolynomial,
};
pub use poly::{
    apolar_weights, apply_diff, expand_power, monomial_count, pairing_matrix, GradedPoly,
    GradedSubspace, MonomialBasis, OperatorSpace, SolutionSpace, Space,
};
pub use scalar::Scalar;

/// Exact rational scalar: arbitrary-precision numerator and positive
/// denominator, always in lowest terms.
pub type Q = num_rational::BigRational;

/// Dense matrix over [`Q`].
pub type QMatrix = Matrix<Q>;

/// Arrangement with rational defining forms.
pub type QArrangement = Arrangement<Q>;

/// Polynomial in the operator variables `x1..xl` with rational coefficients.
pub type QOperatorPoly = GradedPoly<Q, OperatorSpace>;

/// Polynomial in the solution variables `y1..yl` with rational coefficients.
pub type QSolutionPoly = GradedPoly<Q, SolutionSpace>;
