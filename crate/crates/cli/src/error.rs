use thiserror::Error;

/// Command failures with stable exit codes:
///
/// | code | meaning |
/// |------|---------|
/// | 1 | general failure, I/O, or `verify` gap above tolerance |
/// | 2 | malformed problem file or argument |
/// | 3 | dimension mismatch |
/// | 4 | a required cone or decomposition is missing |
/// | 5 | unsupported operand pair |
/// | 6 | other precondition violated (wrong kind, domain, unbounded operand, bad index) |
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    General(String),
    #[error("{0}")]
    Io(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("missing input: {0}")]
    Missing(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("maximum gap {gap:e} exceeds tolerance {tolerance:e}")]
    GapExceeded { gap: f64, tolerance: f64 },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::General(_) | CliError::Io(_) | CliError::GapExceeded { .. } => 1,
            CliError::Schema(_) => 2,
            CliError::Dimension(_) => 3,
            CliError::Missing(_) => 4,
            CliError::Unsupported(_) => 5,
            CliError::Precondition(_) => 6,
        }
    }
}

impl From<exhauster::Error> for CliError {
    fn from(err: exhauster::Error) -> Self {
        use exhauster::Error as E;
        let msg = err.to_string();
        match err.root() {
            E::DimensionMismatch { .. } => CliError::Dimension(msg),
            E::NonFinite
            | E::ZeroDimension
            | E::NegativeRadius(_)
            | E::NoVertices
            | E::EmptyFamily => CliError::Schema(msg),
            E::UnsupportedPair { .. } | E::ConversionUnavailable(_) | E::EnumerationTooLarge(_) => {
                CliError::Unsupported(msg)
            }
            E::PointNotInSet { .. }
            | E::UnboundedOperand
            | E::InvalidIndex(_)
            | E::InvalidCandidates
            | E::WrongKind { .. }
            | E::DomainNotFullSpace
            | E::KindMismatch
            | E::DomainMismatch => CliError::Precondition(msg),
            E::IterationLimit | E::InPair { .. } => CliError::General(msg),
        }
    }
}
