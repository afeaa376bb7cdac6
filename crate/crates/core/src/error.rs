use thiserror::Error;

use crate::neighborhood::NbdReport;
use crate::topology::AxiomReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("denominator must be in 1..=255, got {0}")]
    InvalidDenominator(u32),
    #[error("grade {value} is not on the chain with denominator {denominator}")]
    GradeOffChain { value: String, denominator: u32 },
    #[error("malformed grade {0:?}, expected \"k/D\"")]
    MalformedGrade(String),
    #[error("universe must contain at least one point")]
    EmptyUniverse,
    #[error("duplicate point label {0:?}")]
    DuplicatePoint(String),
    #[error("unknown point {0:?}")]
    UnknownPoint(String),
    #[error("point {0:?} has no entry")]
    MissingPoint(String),
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error("tuple has {found} grades, expected {expected}")]
    TupleLength { expected: usize, found: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("join of an empty family")]
    EmptyFamily,
    #[error("set is outside the restricted class (mixed positivity at {0:?})")]
    NotRestricted(String),
    #[error("expected a one-dimensional fuzzy set, got dimension {0}")]
    NotOneDimensional(usize),
    #[error("map is not total: point {0:?} is unassigned")]
    IncompleteMap(String),
    #[error("family is not a subfamily of the topology")]
    NotASubfamily,
    #[error("family is not an open base of the topology")]
    NotABase,
    #[error("topology kinds differ")]
    KindMismatch,
    #[error("map is not bijective")]
    NotBijective,
    #[error("candidate family violates the topology axioms: {0}")]
    InvalidTopology(Box<AxiomReport>),
    #[error("neighbourhood system violates its axioms: {0}")]
    InvalidNbdSystem(Box<NbdReport>),
    #[error("family is not a cover: at point {point:?} coordinate {coordinate} the join reaches only {sup}")]
    NotACover {
        point: String,
        coordinate: usize,
        sup: String,
    },
    #[error("grid of {count} sets exceeds the enumeration limit {limit}")]
    GridTooLarge { count: u128, limit: u128 },
}
