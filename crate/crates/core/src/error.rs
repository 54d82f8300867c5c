use thiserror::Error;

/// Errors raised by every module of the crate.
///
/// Cap violations are kept in a single variant so callers can tell
/// "the input is wrong" apart from "the computation is too large".
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed quiver specification: {0}")]
    MalformedSpec(String),
    #[error("arrow {0} -> {0} is a loop")]
    LoopArrow(String),
    #[error("oriented cycle through vertices {0:?}")]
    OrientedCycle(Vec<String>),
    #[error("duplicate vertex identifier {0:?}")]
    DuplicateVertex(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("integer overflow while computing {0}")]
    ArithmeticOverflow(&'static str),
    #[error("{what} exceeds the configured cap of {cap}")]
    CapExceeded { what: &'static str, cap: u64 },
    #[error("the zero dimension vector is not allowed here")]
    ZeroVector,
    #[error("reflection descent did not terminate within {0} steps")]
    NonTermination(u64),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("factor {0} is not a Schur root")]
    NotSchur(String),
    #[error("{0} is not a supported prime field size")]
    NonPrimeField(u64),
    #[error("mismatched operands: {0}")]
    Mismatch(String),
    #[error("the quiver is not flagged as representation-finite")]
    NotDynkin,
    #[error("family has two non-isomorphic classes of maximal orbit dimension")]
    AmbiguousTop,
    #[error("polynomial division left a nonzero remainder")]
    NonPolynomialDivision,
}

impl Error {
    pub(crate) fn cap(what: &'static str, cap: impl TryInto<u64>) -> Self {
        Error::CapExceeded {
            what,
            cap: cap.try_into().unwrap_or(u64::MAX),
        }
    }

    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. } | Error::NonTermination(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
