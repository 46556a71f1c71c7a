use std::collections::BTreeSet;

use num_bigint::BigInt;

use crate::lefschetz::SurfaceKind;
use crate::poly::IntPolynomial;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("domain of a Lefschetz sequence must be nonempty and divisor-closed: {0}")]
    InvalidDomain(String),

    #[error("Dold integrality fails at n = {n}: {numerator} is not divisible by {n}")]
    DoldViolation { n: u64, numerator: BigInt },

    #[error("value for n = {0} is outside the sequence domain")]
    OutsideDomain(u64),

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("polynomial division is not exact over the integers")]
    ExactnessError,

    #[error("polynomial is not monic: {0}")]
    NonMonicInput(IntPolynomial),

    #[error("not quasi-unipotent: residual factor {residual} has roots off the roots of unity")]
    NotQuasiUnipotent { residual: IntPolynomial },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix dimension {0} is odd; symplectic predicates need an even dimension")]
    OddDimension(usize),

    #[error("matrix is not antisymplectic")]
    NotAntisymplectic,

    #[error(
        "{kind} model of genus {genus} requires a matrix of dimension {expected}, got {actual}"
    )]
    GenusMismatch {
        kind: SurfaceKind,
        genus: u64,
        expected: u64,
        actual: usize,
    },

    #[error("homology matrix fails the {0} form check")]
    FormViolation(&'static str),

    #[error("operation requires an orientation-reversing model, got {0}")]
    WrongKind(SurfaceKind),

    #[error("target set must be nonempty")]
    EmptyTarget,

    #[error("target set must contain positive integers only")]
    NonPositivePeriod,

    #[error("orientation-reversing maps have no odd algebraic periods; the target must consist of even numbers, but {0:?} are odd")]
    OddTargetUnrealizable(BTreeSet<u64>),

    #[error("achieved algebraic periods {achieved:?} differ from target {target:?}")]
    TargetMismatch {
        target: BTreeSet<u64>,
        achieved: BTreeSet<u64>,
    },

    #[error("cannot parse zeta factors: {0}")]
    FactorParse(String),
}
