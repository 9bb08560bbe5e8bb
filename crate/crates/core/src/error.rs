use thiserror::Error;

/// Errors raised by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("negative exponent at byte {0}")]
    NegativeExponent(usize),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("operands live over different rings")]
    RingMismatch,
    #[error("monomials have different numbers of variables ({0} vs {1})")]
    ArityMismatch(usize, usize),
    #[error("inhomogeneous input: {0}")]
    InhomogeneousInput(String),
    #[error("vector does not live in the expected ambient module")]
    AmbientMismatch,
    #[error("module has infinite length (Krull dimension {0})")]
    InfiniteLength(i32),
    #[error("resolution did not terminate within {0} steps")]
    CapExceeded(usize),
    #[error("Koszul complex requested on a zero element")]
    ZeroElement,
    #[error("invalid chain map: {0}")]
    InvalidChainMap(String),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("element is not homogeneous")]
    InhomogeneousElement,
    #[error("quotient does not have finite length (Krull dimension {0})")]
    NotFiniteLength(i32),
    #[error("length function value is not finite: {0}")]
    NotFiniteValue(String),
    #[error("window must be at least 2, got {0}")]
    InvalidWindow(usize),
    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("fitted degree {degree} exceeds the reference degree {c}")]
    DegreeExceedsC { degree: u32, c: u32 },
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("time budget exhausted")]
    TimedOut,
}

pub type Result<T> = std::result::Result<T, Error>;
