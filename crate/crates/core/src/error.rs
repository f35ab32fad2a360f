use alloc::string::String;

use crate::rational::Rational;

/// Everything that can go wrong in this crate.
///
/// Elements are rendered to strings (`{a,c}`, `0`) when the error is built so
/// the error stays meaningful after the lattice is gone.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("a lattice needs at least one generator name")]
    EmptyGenerators,
    #[error("duplicate point name `{0}`")]
    DuplicateName(String),
    #[error("{count} generator points exceed the cap of {cap}")]
    TooManyPoints { count: usize, cap: usize },
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("the cover relation has a cycle through `{0}`")]
    CycleDetected(String),
    #[error("element belongs to a different lattice")]
    LatticeMismatch,
    #[error("the one-element lattice has no partitions")]
    TrivialLattice,

    #[error("blocks do not join to the top element")]
    JoinNotTop,
    #[error("blocks {0} and {1} overlap")]
    OverlappingBlocks(String, String),
    #[error("the zero element cannot be a block")]
    ZeroBlock,
    #[error("block {0} appears twice")]
    DuplicateBlock(String),
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("modular law fails at ({a}, {b})")]
    ModularLawViolation { a: String, b: String },
    #[error("valuation is negative at {0}")]
    NegativeValue(String),
    #[error("no value assigned to {0}")]
    MissingElement(String),
    #[error("value assigned twice to {0}")]
    DuplicateElement(String),
    #[error("the lattice is not Boolean")]
    NotBoolean,
    #[error("{0} is not an atom")]
    NotAnAtom(String),
    #[error("atom weights sum to {0}, not 1")]
    WeightSum(Rational),
    #[error("negative weight on atom {0}")]
    NegativeWeight(String),
    #[error("no weight given for atom {0}")]
    MissingWeight(String),
    #[error("valuation is not bounded and additive")]
    NotBoundedAdditive,
    #[error("valuation is zero on block {0}")]
    ZeroBlockValuation(String),

    #[error("acts are defined on different partitions")]
    DomainMismatch,
    #[error("the target partition is not comparable in the required direction")]
    NotARefinement,
    #[error("expected {expected} payoffs, found {found}")]
    PayoffCountMismatch { expected: usize, found: usize },
    #[error("{0} is not a block of the partition")]
    UnknownBlock(String),

    #[error("a lottery needs at least one reward")]
    EmptyLottery,
    #[error("reward {0} listed twice")]
    DuplicateReward(Rational),
    #[error("probability {0} is outside [0, 1]")]
    ProbabilityOutOfRange(Rational),
    #[error("probabilities sum to {0}, not 1")]
    ProbabilitySum(Rational),

    #[error("affine scale must be positive, got {0}")]
    NonpositiveScale(Rational),
    #[error("total of payoffs must be positive, got {0}")]
    NonpositiveTotal(Rational),
    #[error("parameter `{name}` must be positive, got {value}")]
    NonpositiveParameter { name: &'static str, value: Rational },

    #[error("no unique {0} found among all partitions")]
    BoundNotUnique(&'static str),

    #[error("cannot parse `{0}` as a rational")]
    ParseRational(String),
}
