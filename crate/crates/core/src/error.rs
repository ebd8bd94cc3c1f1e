use thiserror::Error;

use crate::boolalg::Condition;

/// Errors raised by every module of the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("conditions belong to different algebras")]
    AlgebraMismatch,
    #[error("an algebra needs at least one atom and at most {max} atoms")]
    AtomCount { max: usize },
    #[error("duplicate atom identifier `{0}`")]
    DuplicateAtom(String),
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("empty family")]
    EmptyFamily,
    #[error("partitions have different bases")]
    DifferentBase,
    #[error("invalid partition: {0}")]
    PartitionInvalid(String),
    #[error("pick {index} lives on {found} but its part is {expected}")]
    PickSupportMismatch {
        index: usize,
        expected: Condition,
        found: Condition,
    },
    #[error("ground set is empty")]
    EmptyGround,
    #[error("empty input")]
    EmptyInput,
    #[error("support mismatch: {0}")]
    SupportMismatch(String),
    #[error("operands live in different conditional sets")]
    ParentMismatch,
    #[error("carrier mismatch: {0}")]
    CarrierMismatch(String),
    #[error("carrier at atom `{atom}` has {size} values, limit is {max}")]
    CarrierTooLarge {
        atom: String,
        size: usize,
        max: usize,
    },
    #[error("relation is not a total order at atom `{0}`")]
    NotTotal(String),
    #[error("not an order: {0}")]
    NotAnOrder(String),
    #[error("no bound at atom `{0}`")]
    NoBound(String),
    #[error("invalid base: {0}")]
    InvalidBase(String),
    #[error("system has no positive minimal condition")]
    DegenerateSystem,
    #[error("filter is not materialized")]
    NotMaterialized,
    #[error("family does not cover the space at atoms {0}")]
    NotACover(Condition),
    #[error("space is not finite")]
    NotFinite,
    #[error("not invertible: value is zero on {0}")]
    NotInvertible(Condition),
    #[error("epsilon must be strictly positive at every atom")]
    EpsNotPositive,
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("malformed sequence descriptor: {0}")]
    MalformedDescriptor(String),
    #[error("metric axiom `{axiom}` fails at atom `{atom}`")]
    MetricAxiomViolation { atom: String, axiom: String },
    #[error("sets are not disjoint on {0}")]
    NotDisjoint(Condition),
    #[error("functional is not dominated at atom `{0}`")]
    DominationViolated(String),
    #[error("unit ball is not circled and absorbing at atom `{0}`")]
    BallNotAbsorbing(String),
    #[error("malformed problem: {0}")]
    MalformedProblem(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("evaluation error: {0}")]
    Eval(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Invalid(e.to_string())
    }
}
