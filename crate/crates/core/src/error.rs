use thiserror::Error;

use crate::chains::Chain;
use crate::monomial::Monomial;
use crate::root_system::RootId;

/// Errors raised by the library.
///
/// Mathematical verification failures that carry a witness (`NotCocycle`,
/// `NotSymmetric`, ...) are kept distinct from malformed-input errors so that
/// front-ends can map them onto different exit codes.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported root system type {series}{rank}")]
    InvalidType { series: char, rank: usize },

    #[error("group of order {order} exceeds the enumeration cap {cap}")]
    GroupTooLarge { order: u128, cap: usize },

    #[error("degree {degree} exceeds the chain degree cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },

    #[error("rank {rank} exceeds the configured cap {cap}")]
    RankCapExceeded { rank: usize, cap: usize },

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("variable tables differ: {left:?} vs {right:?}")]
    VariableMismatch {
        left: Vec<String>,
        right: Vec<String>,
    },

    #[error("cochains live on different root systems ({left} vs {right})")]
    SystemMismatch { left: String, right: String },

    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),

    #[error("cochain is not symmetric; first mismatch at {witness}")]
    NotSymmetric { witness: Chain },

    #[error("cochain is not closed: d(omega)({witness}) = {value}")]
    NotCocycle { witness: Chain, value: Monomial },

    #[error(
        "integration is not well defined at root {root}: decomposition via simple root {first_simple} gives {first_value}, via {second_simple} gives {second_value}"
    )]
    WellDefinednessViolation {
        root: RootId,
        first_simple: RootId,
        first_value: Monomial,
        second_simple: RootId,
        second_value: Monomial,
    },

    #[error("cochain takes a negative exponent at {chain}")]
    NotNaturalInput { chain: Chain },

    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),

    #[error("invalid chain: {0}")]
    InvalidChain(String),

    #[error("vector {0:?} is not a root")]
    UnknownRoot(Vec<i32>),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
