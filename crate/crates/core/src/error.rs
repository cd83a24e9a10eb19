use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("element is not an {ell}-th power")]
    NotAPower { ell: u64 },

    #[error("ideal is not principal")]
    NotPrincipal,

    #[error("element is not integral at the prime above {p}")]
    NotIntegral { p: u64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("search exhausted after {examined} rational primes (cap {cap}) for conditions: {conditions}")]
    SearchExhausted { examined: u64, cap: u64, conditions: String },

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),

    #[error("verification mismatch at {prime}: claimed {claimed}, recomputed {recomputed}")]
    MismatchFound { prime: String, claimed: String, recomputed: String },

    #[error("algebra ramified at {place}, beyond the certificate bound {bound}")]
    RamifiedPlaceOutOfRange { place: u64, bound: u64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
