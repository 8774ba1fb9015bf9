use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero input where a nonzero value is required")]
    ZeroInput,
    #[error("complex root iteration did not converge at {bits} bits")]
    NonConvergence { bits: u32 },
    #[error("precision exhausted at {bits} bits: {context}")]
    PrecisionExhausted { bits: u32, context: String },
    #[error("root search incomplete: {0}")]
    IncompleteRoots(String),
    #[error("polynomial degree {0} exceeds the supported bound")]
    DegreeTooLarge(usize),
    #[error("square test inconclusive")]
    Inconclusive,
    #[error("prime {0} is not a good prime for this polynomial")]
    BadPrime(u64),
    #[error("curve has singular reduction at {0}")]
    SingularReduction(u64),
    #[error("no primes of good reduction found")]
    NoGoodPrimes,
    #[error("torsion enumeration found {found} points, incompatible with bound {bound}")]
    TorsionBoundMismatch { found: u64, bound: u64 },
    #[error("division polynomial for {0} is not supported")]
    UnsupportedPrime(u64),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("field mismatch between operands")]
    FieldMismatch,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable identifier for machine-readable error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "division_by_zero",
            Error::ZeroInput => "zero_input",
            Error::NonConvergence { .. } => "non_convergence",
            Error::PrecisionExhausted { .. } => "precision_exhausted",
            Error::IncompleteRoots(_) => "incomplete_roots",
            Error::DegreeTooLarge(_) => "degree_too_large",
            Error::Inconclusive => "inconclusive",
            Error::BadPrime(_) => "bad_prime",
            Error::SingularReduction(_) => "singular_reduction",
            Error::NoGoodPrimes => "no_good_primes",
            Error::TorsionBoundMismatch { .. } => "torsion_bound_mismatch",
            Error::UnsupportedPrime(_) => "unsupported_prime",
            Error::ZeroDenominator => "zero_denominator",
            Error::FieldMismatch => "field_mismatch",
            Error::InvalidInput(_) => "invalid_input",
            Error::Internal(_) => "internal",
        }
    }
}
