use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("closure exceeded cap of {0} elements")]
    CapExceeded(usize),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("subgroups have different parent groups")]
    ParentMismatch,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("eigenspace splitting stalled after {0} passes")]
    SplitFailure(usize),
    #[error("prime {0} is not valid for this group (need p prime, p > |G|, p = 1 mod exponent)")]
    BadPrime(u64),
    #[error("inner product did not lift to a consistent integer: {0}")]
    NonIntegral(String),
    #[error("element {0} is not central")]
    NotCentral(usize),
    #[error("no exponent k < {0} matches the central scalar")]
    NoExponent(usize),
    #[error("{0} is not a power of the given root modulo p")]
    NotAPower(u64),
    #[error("embedding is not an injective homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("character tables were computed at different primes ({0} vs {1})")]
    PrimeMismatch(u64, u64),
    #[error("vector length {got} does not match expected {want}")]
    DimensionMismatch { want: usize, got: usize },
    #[error("fusion file parse error: {0}")]
    ParseError(String),
    #[error("fusion axiom violated: {0}")]
    ValidationError(String),
    #[error("theorem assertion failed on the data: {0}")]
    TheoremViolation(String),
    #[error("irrep {0} of the subgroup occurs in no restriction")]
    UncoveredIrrep(usize),
    #[error("subgroup is not abelian")]
    NotAbelian,
    #[error("fusion ring is not commutative (pass --allow-noncommutative to proceed)")]
    NonCommutativeFusion,
    #[error("group spec parse error at position {pos}: {msg}")]
    SpecParseError { pos: usize, msg: String },
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
