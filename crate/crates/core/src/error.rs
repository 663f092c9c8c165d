use thiserror::Error;

use crate::splitting::SignatureEstimate;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong in the algebra engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("characteristic {0} is not a prime below 2^32")]
    NonPrimeCharacteristic(u64),

    #[error("duplicate name `{0}`")]
    DuplicateName(String),

    #[error("`{0}` is reserved for internal use")]
    ReservedName(String),

    #[error("operands belong to different rings")]
    RingMismatch,

    #[error("exponent overflow (per-variable exponents are limited to {})", u16::MAX)]
    ExponentOverflow,

    #[error("colon by the zero ideal")]
    ZeroDivisorColon,

    #[error("quotient is not Artinian")]
    NotArtinian,

    #[error("quotient is not supported only at the origin")]
    NotLocalAtOrigin,

    #[error("not Gorenstein: socle has dimension {socle_dimension}")]
    NotGorenstein { socle_dimension: u64 },

    #[error("supplied element does not generate the socle")]
    InvalidSocleHint,

    #[error("not a system of parameters: expected {expected} elements, got {got}")]
    InvalidSop { expected: usize, got: usize },

    #[error("the ideal is the unit ideal (the quotient ring is zero)")]
    UnitIdeal,

    #[error("the ideal is not contained in the maximal ideal at the origin")]
    NotAtOrigin,

    #[error("ideal is not contained in the prime ({prime}); generator {generator} escapes")]
    NotContaining { prime: String, generator: String },

    #[error("not a prime chain: {0}")]
    InvalidChain(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("assumption `{0}` must be asserted for this check")]
    MissingAssumption(&'static str),

    #[error("ideal is not homogeneous")]
    NotHomogeneous,

    #[error("cost guard exceeded: q^n = {required} > budget {budget}")]
    CostGuardExceeded {
        required: String,
        budget: u64,
        partial: Option<Box<SignatureEstimate>>,
    },

    #[error("oracle budget exceeded: {required} matrix entries > {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

impl Error {
    /// True for the budget and cost-guard family of errors.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::CostGuardExceeded { .. } | Error::BudgetExceeded { .. }
        )
    }
}
