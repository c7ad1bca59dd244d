use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{x} is not coprime to {n}")]
    NotCoprime { x: u64, n: u64 },
    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(u64),
    #[error("modulus {0} exceeds the supported cap 2^31")]
    ModulusTooLarge(u64),
    #[error("base {x} must satisfy 1 <= x < {n}")]
    BaseOutOfRange { x: u64, n: u64 },
    #[error("no register size L with N^2 < 2^L < 2N^2 exists for N = {0}")]
    NoCanonicalRegister(u64),
    #[error("register size L = {bits} is not allowed (canonical L for N = {n} is {canonical:?})")]
    InvalidRegister {
        n: u64,
        bits: u32,
        canonical: Option<u32>,
    },
    #[error("order {0} is odd")]
    OddOrder(u64),
    #[error("x^(r/2) is congruent to -1 mod N")]
    TrivialRoot,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("outcome {k} outside [0, {q})")]
    OutcomeOutOfRange { k: u64, q: u64 },
    #[error("invalid N = {n}: {reason}")]
    InvalidN { n: u64, reason: String },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("operation requires a qubit (dimension 2) object, got dimension {0}")]
    WrongDimension(usize),
    #[error("output dimension {0} exceeds the sign-vector cap of 4")]
    DimensionTooLarge(usize),
    #[error("matrix is not a valid density matrix: {0}")]
    InvalidState(String),
    #[error("state is not incoherent")]
    NotIncoherent,
    #[error("map is not completely positive and trace preserving: {0}")]
    NotCptp(String),
    #[error("detection channel is not unital")]
    NotUnital,
    #[error("probability parameter {0} outside [0, 1]")]
    InvalidProbability(f64),
    #[error("counterexample witness invalid: {0}")]
    WitnessInvalid(String),

    #[error("block count mismatch: expected {expected} channels, got {actual}")]
    BlockCountMismatch { expected: usize, actual: usize },
    #[error("{what} = {value} exceeds the cap {cap}")]
    TooLarge {
        what: &'static str,
        value: u64,
        cap: u64,
    },
    #[error("no successful factorisation within {0} trials")]
    MaxIterations(u64),

    #[error("usage: {0}")]
    Usage(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code: 2 usage, 3 domain, 4 capacity.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) | Error::Io(_) => 2,
            Error::TooLarge { .. } | Error::DimensionTooLarge(_) | Error::ModulusTooLarge(_) => 4,
            _ => 3,
        }
    }
}
