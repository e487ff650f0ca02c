use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Jacobi symbol needs a positive odd modulus, got {0}")]
    InvalidJacobiModulus(BigInt),

    #[error("symbol ({c}/{d}) needs an odd lower argument")]
    EvenLowerArgument { c: BigInt, d: BigInt },

    #[error("arguments {c} and {d} are not coprime")]
    NotCoprime { c: BigInt, d: BigInt },

    #[error("symbol product needs odd c and even d, got c = {c}, d = {d}")]
    SymbolProductParity { c: BigInt, d: BigInt },

    #[error("({matrix}) has determinant {det}, expected 1")]
    NotUnimodular { matrix: String, det: BigInt },

    #[error("modulus {modulus} outside the supported range {min}..={max}")]
    InvalidModulus { modulus: u64, min: u64, max: u64 },

    #[error("multipliers are implemented for levels 3 and 4, got {0}")]
    UnsupportedLevel(u32),

    #[error("matrix {matrix} is not in the level-{level} theta group")]
    NotMember { matrix: String, level: u32 },

    #[error("inexact division by {divisor} in {context} for {matrix}")]
    Divisibility {
        divisor: u32,
        context: &'static str,
        matrix: String,
    },

    #[error("Im(tau) = {0} is not positive")]
    NotInUpperHalfPlane(f64),

    #[error("Im(tau) = {im} is below the evaluation floor {floor}")]
    BelowFloor { im: f64, floor: f64 },

    #[error("eta transformation checks need c > 0, got c = {0}")]
    NonPositiveC(BigInt),

    #[error("invalid oracle configuration: {0}")]
    InvalidConfig(String),

    #[error("cannot parse matrix {input:?}: {reason}")]
    ParseMatrix { input: String, reason: String },

    #[error("cannot parse cusp {input:?}: {reason}")]
    ParseCusp { input: String, reason: String },

    #[error("cannot parse generator word {input:?}")]
    ParseWord { input: String },

    #[error("{matrix} matched {matches} coset representatives at level {level}")]
    CosetPartition {
        matrix: String,
        level: u32,
        matches: usize,
    },

    #[error("unknown lemma {0:?}")]
    UnknownLemma(String),

    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
}
