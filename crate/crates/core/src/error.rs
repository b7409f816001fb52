use thiserror::Error;

/// Errors raised by the library. Every variant names the invariant that failed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },

    #[error("weight vector needs at least 3 entries, got {0}")]
    TooFewWeights(usize),

    #[error("weight {index} = {value} is not < 1")]
    WeightNotBelowOne { index: usize, value: String },

    #[error("weights sum to {0}, expected 2")]
    WeightSum(String),

    #[error("signature needs at least 3 orders, got {0}")]
    TooFewOrders(usize),

    #[error("level d must be >= 1, got {0}")]
    BadLevel(i64),

    #[error("order k_{index} = {order} is below 1 - d = {bound}")]
    OrderBelowBound { index: usize, order: i64, bound: i64 },

    #[error("orders sum to {sum}, expected -2d = {expected}")]
    OrderSum { sum: i64, expected: i64 },

    #[error("quadratic signature entry {index} = {order} must be odd and >= -1")]
    NotOddSignature { index: usize, order: i64 },

    #[error("{0} is not a common denominator of the weights")]
    NotCommonDenominator(String),

    #[error("expected {expected} entries, got {got}")]
    Length { expected: usize, got: usize },

    #[error("double factorial undefined for {0} < -1")]
    DoubleFactorialDomain(i64),

    #[error("variable count mismatch: expected {expected}, got {got}")]
    VariableCount { expected: usize, got: usize },

    #[error("substitution is not linear (variable {0} maps to degree > 1)")]
    NotLinear(usize),

    #[error("sample lies on the wall of partition {0}")]
    OnWall(String),

    #[error("sample is not generic: the subset {0} has integral weight")]
    IntegralSubset(String),

    #[error("domains are not adjacent across a single wall ({0} sign differences)")]
    NotAdjacent(usize),

    #[error("boundary sample {0} is not on the common wall")]
    OffWall(usize),

    #[error("at least {0} non-positive weights; single-polygon chart unavailable")]
    UnsupportedChart(usize),

    #[error("level d = {0} has no lattice (supported: 2, 3, 4, 6)")]
    UnsupportedLevel(i64),

    #[error("constraint coefficient {0} is zero")]
    ZeroConstraint(usize),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("F_{{n,a,b}} needs n >= 2, got {0}")]
    TooFewVariables(usize),

    #[error("subset P is invalid: {0}")]
    BadSubset(String),

    #[error("pair is not comparable: sums differ")]
    NotComparable,

    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
