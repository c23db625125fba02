use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("non-finite coordinate in input")]
    NonFinite,

    #[error("vectors must have dimension at least 1")]
    ZeroDimension,

    #[error("ball radius must be non-negative, got {0}")]
    NegativeRadius(f64),

    #[error("a V-polytope needs at least one vertex")]
    NoVertices,

    #[error("unsupported operand pair for {op}: {left} / {right}")]
    UnsupportedPair {
        op: &'static str,
        left: &'static str,
        right: &'static str,
    },

    #[error("V-to-H conversion is only available in dimensions 1 to 3 (got {0})")]
    ConversionUnavailable(usize),

    #[error("vertex enumeration too large ({0} candidate subsets)")]
    EnumerationTooLarge(u128),

    #[error("point is not in the set (violation {violation:e})")]
    PointNotInSet { violation: f64 },

    #[error("operand is unbounded; order relations are defined on bounded sets")]
    UnboundedOperand,

    #[error("simplex iteration limit reached")]
    IterationLimit,

    #[error("exhauster has no members")]
    EmptyFamily,

    #[error("member index {0} out of range")]
    InvalidIndex(usize),

    #[error("candidate list must be nonempty and exclude the tested member")]
    InvalidCandidates,

    #[error("operation requires a {expected} exhauster")]
    WrongKind { expected: &'static str },

    #[error("operation requires the domain cone to be the whole space")]
    DomainNotFullSpace,

    #[error("exhausters have different kinds")]
    KindMismatch,

    #[error("exhausters have different domain cones")]
    DomainMismatch,

    #[error("members {left} and {right}: {source}")]
    InPair {
        left: usize,
        right: usize,
        source: Box<Error>,
    },
}

impl Error {
    /// Strips pair context added by family-level operations.
    pub fn root(&self) -> &Error {
        match self {
            Error::InPair { source, .. } => source.root(),
            other => other,
        }
    }

    pub(crate) fn in_pair(self, left: usize, right: usize) -> Error {
        Error::InPair {
            left,
            right,
            source: Box::new(self),
        }
    }
}
