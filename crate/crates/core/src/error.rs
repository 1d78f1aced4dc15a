use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("even residue characteristic unsupported (p = {0})")]
    EvenPrime(u64),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("residue field too large for the table-driven model: {0}")]
    FieldTooLarge(String),

    #[error("cannot parse extension descriptor '{input}': {reason}")]
    ExtensionSyntax { input: String, reason: String },

    #[error("cannot parse character {index} '{input}': {reason}")]
    CharacterSyntax {
        index: usize,
        input: String,
        reason: String,
    },

    #[error("characters belong to incompatible extensions ({left} vs {right})")]
    IncompatibleExtensions { left: String, right: String },

    #[error("zero residue is not a unit of the residue field")]
    ZeroResidue,

    #[error("reducible principal series: chi_{i}/chi_{j} is |.|_K^{sign}1")]
    Reducible { i: usize, j: usize, sign: char },

    #[error("empty character tuple")]
    EmptyDatum,

    #[error("size guard: {0}")]
    SizeGuard(String),

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("degenerate Gauss sum: residue exponent is 0 mod {0}")]
    DegenerateGaussSum(u64),

    #[error("L-factor pole: {0}")]
    Pole(String),

    #[error("unsupported in gamma module: {0}")]
    UnsupportedRamification(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("singular matrix")]
    Singular,

    #[error("anomaly: {0}")]
    Anomaly(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
