use thiserror::Error;

use crate::reps::Algebra;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("degenerate base: q^2 = 1 or q = 0")]
    DegenerateBase,

    #[error("q = {0} is a root of unity")]
    RootOfUnity(String),

    #[error("series does not terminate and no term count was given")]
    NonTerminating,

    #[error("denominator Pochhammer symbol vanishes at term {term}")]
    PoleInDenominator { term: usize },

    #[error("{base}^({exponent}) is not rational")]
    IrrationalPower { base: String, exponent: String },

    #[error("complex value supplied in exact mode")]
    ComplexInExactMode,

    #[error("operation requires a real value, got {0}")]
    NotReal(String),

    #[error("invalid representation label: {0}")]
    InvalidLabel(String),

    #[error("realization {realization} is not defined over {algebra}")]
    WrongAlgebra { realization: &'static str, algebra: Algebra },

    #[error("denominator factor {factor} vanishes at basis index {index}")]
    DenominatorVanishes { index: usize, factor: String },

    #[error("parameter a must be nonzero")]
    ZeroParameterA,

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix is not tridiagonal: nonzero entry at ({row}, {col})")]
    NotTridiagonal { row: usize, col: usize },

    #[error("superdiagonal entry at row {row} is not 1")]
    NonUnitSuperdiagonal { row: usize },

    #[error("eigenvalue iteration did not converge")]
    ConvergenceFailure,

    #[error("side condition violated: {0}")]
    SideConditionViolated(String),

    #[error("unknown case: {0}")]
    UnknownCase(String),

    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },

    #[error("cannot parse {0:?} as a number")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
