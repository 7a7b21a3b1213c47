//! Explicit matrix realizations of the Racah and Askey–Wilson algebras.
//!
//! The crate builds representation matrices of su(2), su(1,1), the oscillator
//! algebra and their quantum deformations ([`reps`]); turns them into operator
//! pairs `(X, Y)` ([`realizations`]); checks the defining cubic relations as
//! matrix identities ([`algcheck`]); reads off the three-term recurrence carried
//! by the tridiagonal `Y` ([`recurrence`]); and compares the recurrence against
//! independent hypergeometric evaluations of Askey-scheme polynomials
//! ([`families`]). All of it runs over exact rationals, floats or complex
//! floats through one [`Scalar`] type.

pub mod algcheck;
pub mod error;
pub mod families;
pub mod matrix;
pub mod realizations;
pub mod recurrence;
pub mod reps;
pub mod scalars;

pub use algcheck::{expected_constants, relation_residuals, verify_realization, StructureConstants, RESIDUAL_REL_TOL};
pub use error::{Error, Result};
pub use families::{
    family_lambda, family_pn, sweep, verify_family, CheckStatus, Family, FamilyCheck, FamilyMap, SweepConfig,
    SweepReport,
};
pub use matrix::{Matrix, Residual, ResidualReport};
pub use realizations::{build, delta_const, OperatorPair, RealizationKind};
pub use recurrence::{eigen_residual, extract, run, spectrum_float, spectrum_of, Recurrence};
pub use reps::{build_rep, check_algebra_relations, Algebra, RepMatrices, RepSpec};
pub use scalars::{Mode, Scalar};
