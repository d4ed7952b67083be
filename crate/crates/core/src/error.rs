use thiserror::Error;

use crate::presentation::RelationType;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("coordinates ({0}) do not share a common parity")]
    ParityMismatch(String),

    #[error("the zero element has no projective class")]
    ZeroElement,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("primes must be odd (got {0})")]
    EvenPrime(u64),

    #[error("prime {0} listed more than once")]
    DuplicatePrime(u64),

    #[error("primes must be odd and the prime set must be nonempty")]
    NoOddPrimes,

    #[error("no {kind} match for operands {operands}")]
    MatchNotFound { kind: RelationType, operands: String },

    #[error("presentation would have {found} generators, above the cap of {cap}")]
    SizeLimitExceeded { found: usize, cap: usize },

    #[error("{0} does not split the quaternion algebra (the algebra ramifies at 2)")]
    InvalidPrime(u64),

    #[error("modulus {p}^{k} does not fit in 64 bits")]
    ModulusTooLarge { p: u64, k: u32 },

    #[error("reduced norm {norm} does not match the splitting prime {p}")]
    NormMismatch { norm: String, p: u64 },

    #[error("congruence prime {0} lies in S")]
    PrimeInS(u64),

    #[error("closure exceeded the cap of {0} elements")]
    CapExceeded(usize),

    #[error("generator matrix is singular modulo {0}")]
    SingularGenerator(u64),

    #[error("generator index {index} out of range for {count} generators")]
    GeneratorOutOfRange { index: usize, count: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
}

pub type Result<T> = std::result::Result<T, Error>;
