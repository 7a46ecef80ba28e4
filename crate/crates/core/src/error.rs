use thiserror::Error;

/// Errors raised by the algebra engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ambient variable counts differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),

    #[error("polynomial is not homogeneous (degrees {0} and {1} both present)")]
    NotHomogeneous(u32, u32),

    #[error("expected degree {expected}, found {found}")]
    WrongDegree { expected: u32, found: u32 },

    #[error("monomial {0} is not part of the degree slice")]
    MissingMonomial(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("degree {degree} exceeds the configured cap {cap}")]
    DegreeCapExceeded { degree: u32, cap: u32 },

    #[error("degree {degree} is beyond the built range (max degree {max})")]
    DegreeOutOfRange { degree: u32, max: u32 },

    #[error("invalid relation: {0}")]
    InvalidRelation(String),

    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),

    #[error("no strictness witness in degree {0}: multiplicity is zero")]
    NoWitness(u32),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("cache error: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
