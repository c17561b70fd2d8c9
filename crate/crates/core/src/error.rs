use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("variable `{0}` has no pure power among the relations")]
    NotZeroDimensional(String),
    #[error("site {0} is out of range")]
    InvalidSite(usize),
    #[error("objects live over different rings")]
    RingMismatch,
    #[error("not a chain map: {0}")]
    NotChainMap(String),
    #[error("factor at site {0} is not Gorenstein (socle dimension {1})")]
    NotGorenstein(usize, usize),
    #[error("requested locus is not contained in the NE-locus")]
    NotContained,
    #[error("filtration does not contain every point at index -1")]
    TailViolation,
    #[error("enumeration too large: {0}")]
    TooLarge(String),
    #[error("map is not grade-consistent")]
    NotGradeConsistent,
    #[error("factor at site {0} is a field; no witness of positive projective dimension")]
    RegularFactor(usize),
    #[error("free resolution did not stabilize within {0} steps")]
    PdCapExceeded(usize),
    #[error("operation needs a module complex with a single nonzero term")]
    UnsupportedModuleComplex,
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
