use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements belong to different field configurations")]
    ConfigMismatch,
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("valuation of zero is undefined")]
    ValuationOfZero,
    #[error("operation requires odd characteristic")]
    EvenCharacteristic,
    #[error("operation requires characteristic 2")]
    OddCharacteristic,
    #[error("bad reduction at {prime}: {detail}")]
    BadReduction { prime: String, detail: String },
    #[error("characteristic of the residue context divides the modulus")]
    CharacteristicDividesModulus,
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("twist by zero")]
    ZeroTwist,
    #[error("splitting degree exceeded cap {cap}")]
    CapExceeded { cap: u64 },
    #[error("torsion polynomial is inseparable")]
    InseparableModulus,
    #[error("norm stayed non-squarefree for every tried shift")]
    NormDegenerate,
    #[error("Frobenius identity has no solution")]
    NoSolution,
    #[error("Frobenius identity has several solutions")]
    AmbiguousSolution,
    #[error("Frobenius prime equals the modulus")]
    CharacteristicClash,
    #[error("prime {0} is ramified (repeated roots)")]
    RamifiedPrime(String),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("mod-l image too small for the resolvent construction (order {order})")]
    ImageTooSmall { order: u64 },
    #[error("only {found} totally split primes, need {needed}")]
    InsufficientSplitPrimes { found: usize, needed: usize },
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("element does not belong to the field: {0}")]
    FieldMismatch(String),
    #[error("extension of degree {0} is too large")]
    ExtensionTooLarge(usize),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
