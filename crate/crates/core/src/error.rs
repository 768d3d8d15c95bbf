use alloc::string::String;

/// Failures raised by the market model and its solvers.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("outcome space has no variables")]
    EmptySpace,
    #[error("variable `{0}` is declared more than once")]
    DuplicateVariable(String),
    #[error("variable `{name}` has cardinality {cardinality}; at least 2 is required")]
    InvalidCardinality { name: String, cardinality: usize },
    #[error("joint state count exceeds the cap of {cap}")]
    StateCapExceeded { cap: usize },
    #[error("clique is empty")]
    EmptyClique,
    #[error("clique lists variable {0} more than once")]
    DuplicateCliqueMember(usize),
    #[error("clique references variable index {index} but only {len} variables exist")]
    InvalidClique { index: usize, len: usize },
    #[error("value {value} is out of range for variable {variable}")]
    InvalidValue { variable: usize, value: usize },
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("table entry {index} is negative or not finite")]
    InvalidEntry { index: usize },
    #[error("probability table has no positive mass")]
    DegenerateBelief,
    #[error("factor entry {index} must be strictly positive")]
    NonPositiveFactor { index: usize },
    #[error("belief entry {index} is zero; its logarithm is undefined")]
    ZeroBelief { index: usize },
    #[error("price of good {index} is zero or negative")]
    ZeroPrice { index: usize },
    #[error("price of good {index} is outside (0, 1)")]
    PriceOutOfRange { index: usize },
    #[error("prices sum to zero")]
    DegeneratePrices,
    #[error("agent wealth must be positive and finite")]
    InvalidWealth,
    #[error("unsupported agent: {0}")]
    UnsupportedAgent(&'static str),
    #[error("variable {0} is not binary")]
    NonBinaryVariable(usize),
    #[error("conditional on variable {variable} = {value} is undefined: the marginal is zero")]
    DegenerateConditional { variable: usize, value: usize },
    #[error("market has no agents")]
    NoAgents,
    #[error("variable {0} is not covered by any agent")]
    UncoveredVariable(usize),
    #[error("grid is empty")]
    EmptyGrid,
    #[error("grid has {points} points, more than the limit of {limit}")]
    GridTooLarge { points: u128, limit: u128 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;
