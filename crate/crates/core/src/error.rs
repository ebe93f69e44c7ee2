use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("trivial ratio: every factorial cancels")]
    TrivialRatio,
    #[error("entries must be positive integers")]
    NonPositiveEntry,
    #[error("unbounded: numerator and denominator sums differ ({numerator} vs {denominator})")]
    Unbounded { numerator: u64, denominator: u64 },
    #[error("degree mismatch: numerator and denominator sums differ")]
    DegreeMismatch,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("not a Galois twist: gcd({k}, {modulus}) != 1")]
    NotGaloisTwist { k: u64, modulus: u64 },
    #[error("modulus {0} appears with both signs")]
    ConflictingModulus(u64),
    #[error("step function has no terms")]
    EmptyStepFunction,
    #[error("unbounded step function: sum of c/m is not zero")]
    UnboundedStep,
    #[error("no initial plateau: the first jump of the step function is not to 1")]
    NoInitialPlateau,
    #[error("step function is not two-valued")]
    NotTwoValued,
    #[error("L - K = {0}: the classification covers only L = K + 1")]
    OutsideClassification(i64),
    #[error(
        "catalog incomplete: {0} is not in the sporadic catalog; rerun search with larger bounds"
    )]
    CatalogIncomplete(String),
    #[error("invalid search config: {0}")]
    InvalidConfig(String),
    #[error("catalog parse error at line {line}: {message}")]
    CatalogParse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
