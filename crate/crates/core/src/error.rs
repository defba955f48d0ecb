use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("modulus must be odd and positive, got {0}")]
    BadModulus(String),

    #[error("gcd precondition violated: {0}")]
    NotCoprime(String),

    #[error("not a dyadic rational: {0}")]
    NotDyadic(String),

    #[error("slope of segment {segment} is not a power of 2: {slope}")]
    BadSlope { segment: usize, slope: String },

    #[error("coordinates must be strictly increasing: {0}")]
    NonMonotone(String),

    #[error("map endpoints must lie on the diagonal of the domain: {0}")]
    OffDiagonal(String),

    #[error("domain mismatch: {0} vs {1}")]
    DomainMismatch(String, String),

    #[error("point {0} lies outside the domain {1}")]
    OutsideDomain(String, String),

    #[error("interval {0} is not preserved by the map")]
    NotPreserved(String),

    #[error("segments overlap or are out of order: {0}")]
    Overlap(String),

    #[error("map is not strictly below the diagonal on {0}")]
    NotBelowDiagonal(String),

    #[error("maps do not coincide on {0}")]
    NoCoincidence(String),

    #[error("no common linearity box at {0}")]
    NoBox(String),

    #[error("fixed-point sets differ")]
    FixedSetMismatch,

    #[error("map has interior dyadic fixed points: {0}")]
    NotPl20(String),

    #[error("points {0} and {1} lie in different components")]
    DifferentComponents(String, String),

    #[error("tuple lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("root index must be positive")]
    ZeroRootIndex,

    #[error("the identity has no finite list of roots")]
    IdentityRoots,

    #[error("centralizer is not cyclic on {0}")]
    NotCyclic(String),

    #[error("degenerate power equation: X = Y")]
    DegenerateEquation,

    #[error("invalid centralizer descriptor: {0}")]
    BadDescriptor(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
