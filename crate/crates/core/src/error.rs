use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor {conductor} exceeds the configured cap {cap}")]
    ConductorTooLarge { conductor: u64, cap: u32 },
    #[error("cannot parse {what}: {msg}")]
    Parse { what: &'static str, msg: String },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("index {index} out of range for {len} variables or elements")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("polynomials need at least one variable")]
    ZeroVariables,
    #[error("matrix is not unitary: {0}")]
    NonUnitary(String),
    #[error("group closure exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error(
        "group acts reducibly (sum |tr w|^2 / |W| = {certificate}); decompose the representation \
         into irreducible pieces and analyze each one, or opt in with allow_reducible"
    )]
    Reducible { certificate: String },
    #[error("not a reflection group: {0}")]
    NotReflectionGroup(String),
    #[error("degree extraction failed: {0}")]
    DegreeExtraction(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("rank selection failed: {0}")]
    RankSelection(String),
    #[error("degenerate candidate: {0}")]
    DegenerateCandidate(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("zero vector in Gram-Schmidt block of degree {degree}")]
    ZeroInBlock { degree: u32 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
